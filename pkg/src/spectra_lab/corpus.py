"""Declarative corpora of test subjects.

A corpus spec is a ``+``-separated list of items:

``zmod:a..b``            Z/n for a <= n <= b
``gf:a..b``              GF(p) for primes a <= p <= b
``products:depthK``      products of K factors chosen from Z/2..Z/9 (unordered, repeats allowed)
``products:depthK:a..b`` same, factors from Z/a..Z/b
``quotients:<item>``     the item's rings together with their quotients by every proper nonzero ideal
``standard``             zmod:1..60 + products:depth2, closed under quotients
``posets:k``             all posets with at most k points
``monomial``             a fixed list of monomial quotient rings
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Iterator

from .errors import ConstructionError
from .ideals import enumerate_ideals
from .monomial import MonomialQuotientRing
from .poset import enumerate_posets
from .ring import TableRing, is_prime, make_gf, make_product, make_quotient, make_zmod

MONOMIAL_CORPUS = (
    (2, ("x", "y"), ((3, 0), (2, 1))),
    (2, ("x", "y"), ((2, 0), (1, 1))),
    (2, ("x", "y"), ((1, 1),)),
    (2, ("x", "y"), ((2, 0),)),
    (2, ("x", "y", "z"), ((1, 1, 0), (0, 1, 1))),
    (3, ("x", "y"), ((2, 0), (0, 2))),
    (2, ("x", "y", "z"), ((1, 1, 1),)),
    (2, ("x", "y", "z"), ((2, 1, 0), (0, 0, 1))),
    (5, ("x",), ((4,),)),
    (2, ("x", "y"), ()),
)


@dataclass(frozen=True)
class Subject:
    """A corpus member and the expression that rebuilds it."""

    expr: str
    value: Any  # TableRing | MonomialQuotientRing | SpecPoset

    @property
    def kind(self) -> str:
        if isinstance(self.value, TableRing):
            return "ring"
        if isinstance(self.value, MonomialQuotientRing):
            return "monomial"
        return "poset"


_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def _range(text: str) -> range:
    m = _RANGE.match(text)
    if not m:
        raise ConstructionError(f"bad range {text!r}; expected a..b")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConstructionError(f"empty range {text!r}")
    return range(lo, hi + 1)


@lru_cache(maxsize=None)
def _zmod(n: int) -> TableRing:
    return make_zmod(n)


def _product(ns: tuple[int, ...]) -> TableRing:
    return make_product([_zmod(n) for n in ns])


def _with_quotients(subjects: list[Subject]) -> list[Subject]:
    out = []
    for s in subjects:
        out.append(s)
        for ideal in enumerate_ideals(s.value):
            if ideal.is_zero() or ideal.is_whole():
                continue
            gens = ", ".join(s.value.name(g) for g in ideal.small_generators())
            base = f"({s.expr})" if " x " in s.expr else s.expr
            out.append(Subject(f"{base} / ({gens})", make_quotient(s.value, ideal)))
    return out


def _item(item: str) -> list[Subject]:
    head, _, rest = item.partition(":")
    if head == "zmod":
        return [Subject(f"Z/{n}", _zmod(n)) for n in _range(rest)]
    if head == "gf":
        return [Subject(f"GF({p})", make_gf(p)) for p in _range(rest) if is_prime(p)]
    if head == "products":
        depth_text, _, span = rest.partition(":")
        m = re.match(r"^depth(\d)$", depth_text)
        if not m:
            raise ConstructionError(f"bad products spec {item!r}; expected products:depthK")
        depth = int(m.group(1))
        if depth < 2:
            raise ConstructionError("product depth must be at least 2")
        factors = _range(span) if span else range(2, 10)
        return [
            Subject(" x ".join(f"Z/{n}" for n in ns), _product(ns))
            for ns in combinations_with_replacement(factors, depth)
        ]
    if head == "quotients":
        return _with_quotients(_item(rest))
    if head == "standard" and not rest:
        return _with_quotients(_item("zmod:1..60") + _item("products:depth2"))
    if head == "posets":
        if not rest.isdigit():
            raise ConstructionError(f"bad posets spec {item!r}; expected posets:k")
        return [Subject(p.literal(), p) for k in range(1, int(rest) + 1) for p in enumerate_posets(k)]
    if head == "monomial" and not rest:
        return [
            Subject(r.label, r)
            for r in (MonomialQuotientRing.create(c, v, g) for c, v, g in MONOMIAL_CORPUS)
        ]
    raise ConstructionError(f"unknown corpus item {item!r}")


def load_corpus(spec: str) -> list[Subject]:
    """Expand a corpus spec; duplicates (same expression) are dropped, order kept."""
    seen: dict[str, Subject] = {}
    for item in spec.split("+"):
        item = item.strip()
        if not item:
            raise ConstructionError(f"empty item in corpus spec {spec!r}")
        for s in _item(item):
            seen.setdefault(s.expr, s)
    return list(seen.values())


def iter_rings(spec: str) -> Iterator[Subject]:
    return (s for s in load_corpus(spec) if s.kind == "ring")
