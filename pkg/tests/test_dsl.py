from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectra_lab.cli.dsl import (
    GF, DSLSyntaxError, MonomialRing, PosetLiteral, Product, Quotient, Zmod, build, parse, pretty,
)
from spectra_lab.errors import ConstructionError, SizeCapError
from spectra_lab.ring import set_size_cap


def test_published_examples():
    assert parse("Z/12") == Zmod(12)
    assert parse("Z/4 x Z/3") == Product((Zmod(4), Zmod(3)))
    assert parse("F2[x,y]/(x^3, x^2*y)") == MonomialRing(2, ("x", "y"), ((3, 0), (2, 1)))
    assert parse("poset{a<b, a<c}") == PosetLiteral(("a", "b", "c"), (("a", "b"), ("a", "c")))


def test_whitespace_insensitive():
    assert parse("  Z / 12 x GF( 5 ) ") == Product((Zmod(12), GF(5)))
    assert parse("F2 [ x , y ] / ( x ^ 3 , x^2 * y )") == parse("F2[x,y]/(x^3,x^2*y)")


def test_product_is_left_associative_and_flat():
    assert parse("Z/2 x Z/3 x Z/5") == Product((Zmod(2), Zmod(3), Zmod(5)))
    assert parse("(Z/2 x Z/3) x Z/5") == Product((Product((Zmod(2), Zmod(3))), Zmod(5)))


def test_quotient_binds_tighter_than_product():
    assert parse("Z/4 / (2) x Z/3") == Product((Quotient(Zmod(4), ("2",)), Zmod(3)))
    assert parse("(Z/2 x Z/4) / ((0, 2))") == Quotient(Product((Zmod(2), Zmod(4))), ("(0,2)",))


def test_build_labels():
    assert build(parse("Z/12 / (4) / ([2])")).n == 2
    assert build(parse("F2[x,y]/(x*x, x*y)")).label == "F2[x,y]/(x^2, x*y)"
    assert build(parse("poset{a<b<c, d}")).k == 4


@pytest.mark.parametrize("text,pos", [
    ("Z/", 2), ("Z/4 x", 5), ("F2[x]/(y)", 7), ("Z/4 )", 4), ("Q/4", 0), ("poset{a<}", 8),
    ("Z/4 / (2", 8), ("F2[x,x]", 7),
])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(DSLSyntaxError) as err:
        parse(text)
    assert err.value.position == pos
    assert f"position {pos}" in str(err.value)


def test_semantic_errors():
    with pytest.raises(ConstructionError):
        build(parse("GF(4)"))
    with pytest.raises(ConstructionError):
        build(parse("Z/4 / (7)"))
    with pytest.raises(DSLSyntaxError):
        parse("Z/4 x F2[x]")


def test_size_cap_checked_before_construction():
    set_size_cap(50)
    try:
        with pytest.raises(SizeCapError):
            build(parse("Z/10 x Z/10 x Z/10"))
    finally:
        set_size_cap(None)


# -- round trip ----------------------------------------------------------------

names = st.sampled_from(["a", "b", "c", "d", "m1", "m2", "p"])


@st.composite
def posets(draw):
    pts = draw(st.lists(names, min_size=1, max_size=4, unique=True))
    order = {p: i for i, p in enumerate(pts)}
    pairs = [(a, b) for a in pts for b in pts if order[a] < order[b]]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return PosetLiteral.make(pts, edges)


@st.composite
def monomial_rings(draw):
    vars = tuple(draw(st.lists(st.sampled_from(["x", "y", "z", "w"]), min_size=1, max_size=3, unique=True)))
    monos = draw(st.lists(
        st.tuples(*[st.integers(0, 3)] * len(vars)).filter(any), max_size=3))
    return MonomialRing(draw(st.sampled_from([2, 3, 5])), vars, tuple(monos))


element = st.integers(0, 9).map(str) | st.tuples(st.integers(0, 3), st.integers(0, 3)).map(
    lambda t: f"({t[0]},{t[1]})") | st.integers(0, 5).map(lambda k: f"[{k}]")

table_leaf = st.integers(1, 30).map(Zmod) | st.sampled_from([2, 3, 5, 7]).map(GF)


def _extend(children):
    return (
        st.lists(children, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs)))
        | st.tuples(children, st.lists(element, min_size=1, max_size=2)).map(
            lambda t: Quotient(t[0], tuple(t[1])))
    )


table_exprs = st.recursive(table_leaf, _extend, max_leaves=5)
exprs = table_exprs | monomial_rings() | posets()


@settings(max_examples=1000, deadline=None)
@given(exprs)
def test_parse_pretty_round_trip(expr):
    # a product directly inside a product is only reachable with parentheses,
    # which the printer supplies; the AST must survive the trip unchanged
    assert parse(pretty(expr)) == expr
