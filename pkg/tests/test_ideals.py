from __future__ import annotations

import pytest
from hypothesis import given, settings

from spectra_lab.ideals import (
    annihilator, enumerate_ideals, ideal_from_generators, is_pure, is_regular_ideal, maximal_ideals,
    nilradical, principal_idempotent_generator, radical, star, unit_ideal, zero_ideal,
)
from spectra_lab.ring import make_product, make_quotient, make_zmod

from oracles import subset_ideals, zmod_ideals, zmod_nilradical
from strategies import small_rings


@pytest.mark.parametrize("n", range(1, 61))
def test_zmod_ideals_are_divisor_ideals(n):
    got = {i.members for i in enumerate_ideals(make_zmod(n))}
    assert got == zmod_ideals(n)


@pytest.mark.parametrize("ring", [
    make_product([make_zmod(2), make_zmod(2)]),
    make_product([make_zmod(2), make_zmod(4)]),
    make_product([make_zmod(3), make_zmod(3)]),
    make_product([make_zmod(2), make_zmod(2), make_zmod(2)]),
], ids=lambda r: r.label)
def test_enumeration_matches_subset_scan(ring):
    oracle = subset_ideals(ring.add.tolist(), ring.mul.tolist(), ring.zero)
    assert {i.members for i in enumerate_ideals(ring)} == oracle


def test_two_generator_ideal_collapses_to_principal():
    # products of principal ideal rings are principal: (2,0), (0,2) generate (2,2)
    r = make_product([make_zmod(4), make_zmod(4)])
    two = ideal_from_generators(r, ["(2,0)", "(0,2)"])
    assert two in enumerate_ideals(r)
    assert str(two) == "((2,2))"


def test_truncated_enumeration_flags_itself():
    r = make_product([make_zmod(4), make_zmod(4)])
    out = enumerate_ideals(r, max_count=3)
    assert len(out) == 3 and out.truncated


@pytest.mark.parametrize("n", range(1, 61))
def test_nilradical_of_zmod(n):
    assert nilradical(make_zmod(n)).members == zmod_nilradical(n)


@settings(max_examples=30, deadline=None)
@given(small_rings())
def test_radical_laws(ring):
    for i in enumerate_ideals(ring):
        r = radical(i)
        assert i.members <= r.members
        assert radical(r) == r


@settings(max_examples=30, deadline=None)
@given(small_rings())
def test_regular_ideals_are_pure(ring):
    for i in enumerate_ideals(ring):
        if is_regular_ideal(i):
            assert is_pure(i)


@settings(max_examples=30, deadline=None)
@given(small_rings())
def test_star_lemmas(ring):
    maxs = set(maximal_ideals(ring))
    for i in enumerate_ideals(ring):
        if i.is_whole():
            continue
        st = star(i)
        assert (st.members == i.members) == (i in maxs)
        assert st.is_ideal == (len([m for m in maxs if i <= m]) == 1)


def test_ideal_operations_in_z12():
    r = make_zmod(12)
    a, b = ideal_from_generators(r, [4]), ideal_from_generators(r, [6])
    assert str(a + b) == "(2)"
    assert (a * b).is_zero()
    assert str(a & b) == "(0)"
    assert a <= ideal_from_generators(r, [2])
    assert 8 in a and 6 not in a


def test_annihilator():
    r = make_zmod(12)
    assert annihilator(r.elem(4)).members == {0, 3, 6, 9}
    assert annihilator(r.elem(1)).is_zero()


def test_purity_examples():
    r = make_zmod(12)
    pure4 = is_pure(ideal_from_generators(r, [4]))
    assert pure4 and pure4.witness[4] == 4  # 4(1 - 4) = -12 = 0
    not_pure = is_pure(ideal_from_generators(r, [2]))
    assert not not_pure and not_pure.witness == 2


def test_star_of_zero_ideal_in_z12_is_not_an_ideal():
    r = make_zmod(12)
    st = star(zero_ideal(r))
    assert not st.is_ideal
    assert st.members == {0, 2, 3, 4, 6, 8, 9, 10}


def test_star_of_whole_ring_is_empty():
    st = star(unit_ideal(make_zmod(6)))
    assert st.members == frozenset() and not st.is_ideal


def test_star_local_quotient():
    r = make_zmod(12)
    st = star(ideal_from_generators(r, [4]))
    assert st.is_ideal and st.as_ideal() == ideal_from_generators(r, [2])


def test_principal_idempotent_generator():
    r = make_zmod(12)
    assert str(principal_idempotent_generator(ideal_from_generators(r, [3]))) == "9"
    assert principal_idempotent_generator(ideal_from_generators(r, [2])) is None


def test_quotient_ideals_match_divisors():
    r = make_zmod(24)
    q = make_quotient(r, ideal_from_generators(r, [8]))
    assert len(enumerate_ideals(q)) == 4  # ideals of Z/8
