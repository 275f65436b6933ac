from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectra_lab.errors import ConstructionError
from spectra_lab.monomial import (
    MonomialQuotientRing, VariablePrime, adjoin_variable, is_lessened_up_to, is_mp, is_reduced,
    kernel_generators, kernel_membership, lessened_radical, minimal_primes, prime_is_idempotent,
    quotient_by_prime_square, support,
)

from oracles import minimal_vertex_covers, poly_kernel_witness


@pytest.fixture
def cubic():
    return MonomialQuotientRing.create(2, ("x", "y"), [(3, 0), (2, 1)])


def mono(ring, **e):
    return ring.poly(ring.monomial(e))


def test_cubic_example(cubic):
    p = VariablePrime.of(cubic, ["x"])
    assert [str(q) for q in minimal_primes(cubic)] == ["(x)"]
    inside = kernel_membership(mono(cubic, x=2), p)
    assert inside.verdict == "in" and str(inside.witness) == "y"
    outside = kernel_membership(mono(cubic, x=1), p)
    assert outside.verdict == "out" and outside.blocking_term == (1, 0)
    assert kernel_generators(cubic, p) == ((2, 0),)


def test_cubic_radicals_are_strict(cubic):
    lr = lessened_radical(cubic)
    assert lr.nprime_nonzero == [(2, 0)]
    assert not lr.nprime_equals_nil and not lr.nil_is_zero


def test_cubic_against_polynomial_oracle(cubic):
    # x^2 * y = 0 and y is outside (x); no polynomial of degree <= 3 rescues x
    assert poly_kernel_witness({(2, 0)}, cubic.gens, {0}, 2, 3) is not None
    assert poly_kernel_witness({(1, 0)}, cubic.gens, {0}, 2, 3) is None


def test_x2_xy_is_not_lessened():
    r = MonomialQuotientRing.create(2, ("x", "y"), [(2, 0), (1, 1)])
    v = is_lessened_up_to(r)
    assert v.verdict == "not_lessened" and v.witness == (1, 0)
    assert not is_reduced(r) and is_mp(r)


def test_xy_prime_square_quotient():
    r = MonomialQuotientRing.create(2, ("x", "y"), [(1, 1)])
    p = VariablePrime.of(r, ["x"])
    assert is_reduced(r) and not prime_is_idempotent(p)
    assert is_lessened_up_to(r).verdict == "lessened"
    q = quotient_by_prime_square(r, p)
    assert q.label == "F2[x,y]/(x^2, x*y)"
    assert is_lessened_up_to(q).verdict == "not_lessened"


def test_adjoin_variable():
    r = MonomialQuotientRing.create(2, ("x", "y"), [(1, 1)])
    assert adjoin_variable(r).label == "F2[x,y,z]/(x*y)"


def test_unknown_when_bound_is_too_small():
    r = MonomialQuotientRing.create(2, ("x", "y"), [(1, 9)])
    p = VariablePrime.of(r, ["x"])
    v = kernel_membership(mono(r, x=1), p, degree_bound=8)
    assert v.verdict == "unknown" and v.needed_degree == 9
    assert kernel_membership(mono(r, x=1), p, degree_bound=9).verdict == "in"


def test_construction_errors():
    with pytest.raises(ConstructionError):
        MonomialQuotientRing.create(4, ("x",), [(2,)])
    with pytest.raises(ConstructionError):
        MonomialQuotientRing.create(2, ("x",), [(0,)])
    with pytest.raises(ConstructionError):
        MonomialQuotientRing.create(2, tuple("abcdefg"), [])
    r = MonomialQuotientRing.create(2, ("x", "y"), [(1, 1)])
    with pytest.raises(ConstructionError):
        VariablePrime.of(r, [])  # (0) does not contain xy


exponent = st.integers(min_value=0, max_value=3)


@st.composite
def monomial_rings(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    gens = draw(st.lists(st.tuples(*[exponent] * n).filter(lambda m: any(m)), min_size=1, max_size=3))
    return MonomialQuotientRing.create(draw(st.sampled_from([2, 3])), "xyz"[:n], gens)


@settings(max_examples=60, deadline=None)
@given(monomial_rings())
def test_minimal_primes_are_minimal_vertex_covers(ring):
    covers = minimal_vertex_covers([support(g) for g in ring.gens], ring.n)
    assert {p.vars_in for p in minimal_primes(ring)} == covers


@settings(max_examples=60, deadline=None)
@given(monomial_rings())
def test_reduced_iff_squarefree(ring):
    assert is_reduced(ring) == all(max(g) <= 1 for g in ring.gens)


@settings(max_examples=40, deadline=None)
@given(monomial_rings())
def test_kernel_verdicts_agree_with_polynomial_oracle(ring):
    if ring.char != 2:
        return
    for p in minimal_primes(ring):
        for m in [(1,) * ring.n] + [tuple(int(i == j) for i in range(ring.n)) for j in range(ring.n)]:
            if ring.in_ideal(m):
                continue
            v = kernel_membership(ring.poly(m), p, degree_bound=6)
            w = poly_kernel_witness({m}, ring.gens, set(p.vars_in), ring.n, 3)
            if w is not None:
                assert v.verdict == "in"
            if v.verdict == "out":
                assert w is None


@settings(max_examples=40, deadline=None)
@given(monomial_rings())
def test_nprime_inside_nilradical(ring):
    lr = lessened_radical(ring)
    assert all(any(all(a >= b for a, b in zip(m, g)) for g in lr.nil_gens) for m in lr.nprime_gens)
