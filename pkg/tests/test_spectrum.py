from __future__ import annotations

import pytest
from hypothesis import given, settings

from spectra_lab.spectrum import (
    FLAG_NAMES, classify, kernel_of_localization, lessened_radical, localize, maximal_primes,
    min_retraction, max_retraction, minimal_primes, primes,
)
from spectra_lab.ring import make_gf, make_product, make_zmod

from oracles import prime_factors, zmod_kernel
from strategies import small_rings

Z12_FLAGS = {
    "zero_dimensional": True, "pi_regular": True, "reduced": False, "quasi_prime": False,
    "local": False, "field": False, "mp": True, "gelfand": True, "clean": True, "lessened": True,
    "locally_lessened": True, "purified": True,
}


def test_z12_flags():
    assert classify(make_zmod(12)).as_dict() == Z12_FLAGS


def test_z12_witnesses():
    rep = classify(make_zmod(12))
    assert rep.flags["reduced"].witness == {"nilpotent": "6", "exponent": 2}
    assert rep.flags["purified"].witness == {"(2) \\ (3)": "4", "(3) \\ (2)": "9"}
    assert rep.mp and not rep.reduced


def test_z4_is_lessened_and_not_reduced():
    rep = classify(make_zmod(4))
    assert rep["lessened"] and not rep["reduced"]
    assert rep["local"] and rep["quasi_prime"]


@pytest.mark.parametrize("n", range(1, 101))
def test_every_zmod_is_lessened(n):
    assert classify(make_zmod(n))["lessened"]


def test_zero_ring():
    rep = classify(make_zmod(1))
    assert primes(make_zmod(1)) == []
    assert rep["reduced"] and rep["lessened"] and not rep["local"]


@pytest.mark.parametrize("n", [2, 4, 6, 12, 30, 36, 60])
def test_zmod_primes_and_kernels(n):
    ring = make_zmod(n)
    ps = primes(ring)
    assert sorted(p.members for p in ps) == sorted(frozenset(range(0, n, q)) for q in prime_factors(n))
    for p in ps:
        q = min((x for x in p.members if x), default=n)
        assert kernel_of_localization(p).kernel.members == zmod_kernel(n, q)
        assert p.is_minimal and p.is_maximal


def test_primes_are_ordered_by_generator():
    assert [str(p.underlying) for p in primes(make_zmod(12))] == ["(2)", "(3)"]


def test_localization_of_z12():
    ring = make_zmod(12)
    locs = {str(p.underlying): localize(p) for p in primes(ring)}
    assert locs["(2)"].n == 4 and locs["(3)"].n == 3
    assert all(classify(loc)["local"] for loc in locs.values())


def test_fields_and_domains():
    rep = classify(make_gf(7))
    assert rep["field"] and rep["reduced"] and rep["local"]
    assert not classify(make_zmod(8))["field"]


def test_lessened_radical_of_z12_is_zero():
    lr = lessened_radical(make_zmod(12))
    assert lr.is_lessened and lr.nprime.is_zero()
    assert lr.nilradical.members == {0, 6}


def test_retractions_on_finite_rings_are_identities():
    ring = make_product([make_zmod(2), make_zmod(9)])
    assert all(k == v for k, v in min_retraction(ring).items())
    assert all(k == v for k, v in max_retraction(ring).items())


@settings(max_examples=40, deadline=None)
@given(small_rings())
def test_classifier_runs_all_cross_checks(ring):
    rep = classify(ring)
    assert set(rep.flags) == set(FLAG_NAMES)
    assert rep["zero_dimensional"] and rep["pi_regular"]
    assert rep["mp"] and rep["gelfand"] and rep["clean"]
    assert rep["lessened"] and rep["locally_lessened"] and rep["purified"]
    assert minimal_primes(ring) == maximal_primes(ring)


@settings(max_examples=40, deadline=None)
@given(small_rings())
def test_lemma_kernel_radical(ring):
    for p in primes(ring):
        kd = kernel_of_localization(p)
        assert kd.kernel_radical.members <= p.members
        assert (kd.kernel_radical == p.underlying) == p.is_minimal
