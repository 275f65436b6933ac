"""Finite spectral spaces modelled as posets (p <= q meaning p is contained in q).

In the Zariski topology the closure of a point is everything above it, so
the open sets are the down-closed sets; the flat topology is the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import ConsistencyError, ConstructionError

MAX_POSET_SIZE = 6
ZARISKI = "zariski"
FLAT = "flat"


class SpecPoset:
    """A partial order on points 0..k-1 stored as a boolean relation matrix."""

    def __init__(self, leq: Sequence[Sequence[bool]], names: Sequence[str] | None = None):
        k = len(leq)
        self.k = k
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        if any(len(row) != k for row in self.leq):
            raise ConstructionError("relation matrix must be square")
        self.names = tuple(names) if names is not None else tuple(f"p{i}" for i in range(k))
        if len(self.names) != k or len(set(self.names)) != k:
            raise ConstructionError("point names must be distinct, one per point")
        for a in range(k):
            if not self.leq[a][a]:
                raise ConstructionError("relation is not reflexive")
            for b in range(k):
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise ConstructionError(f"{self.names[a]} and {self.names[b]} form a cycle")
                for c in range(k):
                    if self.leq[a][b] and self.leq[b][c] and not self.leq[a][c]:
                        raise ConstructionError("relation is not transitive")

    @classmethod
    def from_edges(cls, points: Sequence[str], edges: Iterable[tuple[str, str]]) -> "SpecPoset":
        """Transitive closure of ``a < b`` edges; a cycle is an error."""
        idx = {p: i for i, p in enumerate(points)}
        k = len(points)
        rel = [[i == j for j in range(k)] for i in range(k)]
        for a, b in edges:
            if a == b:
                raise ConstructionError(f"{a} < {a} is not a strict order")
            rel[idx[a]][idx[b]] = True
        for m in range(k):
            for i in range(k):
                if rel[i][m]:
                    for j in range(k):
                        if rel[m][j]:
                            rel[i][j] = True
        return cls(rel, points)

    def __len__(self) -> int:
        return self.k

    def __repr__(self) -> str:
        return f"<SpecPoset {self.literal()}>"

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges a < b with nothing strictly between."""
        k = self.k
        return [
            (a, b) for a in range(k) for b in range(k)
            if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in range(k))
        ]

    def literal(self) -> str:
        covered = {a for e in self.covers() for a in e}
        parts = [f"{self.names[a]}<{self.names[b]}" for a, b in self.covers()]
        parts += [self.names[a] for a in range(self.k) if a not in covered]
        return "poset{" + ", ".join(parts) + "}"

    # -- order structure -------------------------------------------------------

    def down(self, a: int) -> frozenset[int]:
        return frozenset(b for b in range(self.k) if self.leq[b][a])

    def up(self, a: int) -> frozenset[int]:
        return frozenset(b for b in range(self.k) if self.leq[a][b])

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.k) if self.down(a) == {a})

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.k) if self.up(a) == {a})

    def minimals_below(self, a: int) -> list[int]:
        return [m for m in self.minimal if self.leq[m][a]]

    def maximals_above(self, a: int) -> list[int]:
        return [m for m in self.maximal if self.leq[a][m]]

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        """Connected components of the comparability graph."""
        seen: set[int] = set()
        comps = []
        for s in range(self.k):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                a = stack.pop()
                for b in range(self.k):
                    if b not in comp and (self.leq[a][b] or self.leq[b][a]):
                        comp.add(b)
                        stack.append(b)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def component_of(self, a: int) -> frozenset[int]:
        return next(c for c in self.components if a in c)

    def dual(self) -> "SpecPoset":
        return SpecPoset([[self.leq[b][a] for b in range(self.k)] for a in range(self.k)], self.names)

    def is_up_closed(self, s: Iterable[int]) -> bool:
        s = set(s)
        return all(b in s for a in s for b in self.up(a))

    def is_down_closed(self, s: Iterable[int]) -> bool:
        s = set(s)
        return all(b in s for a in s for b in self.down(a))

    # -- canonical form ----------------------------------------------------------

    @cached_property
    def canonical_form(self) -> tuple:
        """Isomorphism-invariant key: the least relation matrix over invariant-respecting relabellings."""
        inv = [(len(self.down(a)), len(self.up(a))) for a in range(self.k)]
        classes: dict[tuple[int, int], list[int]] = {}
        for a in range(self.k):
            classes.setdefault(inv[a], []).append(a)
        keys = sorted(classes)
        best = None
        for perms in product(*(permutations(classes[key]) for key in keys)):
            order = [a for block in perms for a in block]
            bits = tuple(self.leq[a][b] for a in order for b in order)
            if best is None or bits < best:
                best = bits
        return (tuple(inv[a] for key in keys for a in classes[key]), best)

    def is_isomorphic(self, other: "SpecPoset") -> bool:
        return self.k == other.k and self.canonical_form == other.canonical_form


# -- topologies -------------------------------------------------------------------


def open_sets(p: SpecPoset, mode: str) -> list[frozenset[int]]:
    """Zariski opens are the down-closed sets, flat opens the up-closed ones."""
    test = p.is_down_closed if mode == ZARISKI else p.is_up_closed
    if mode not in (ZARISKI, FLAT):
        raise ConstructionError(f"unknown topology {mode!r}")
    out = []
    for mask in range(1 << p.k):
        s = frozenset(i for i in range(p.k) if mask >> i & 1)
        if test(s):
            out.append(s)
    return out


def clopen_sets(p: SpecPoset, mode: str) -> set[frozenset[int]]:
    opens = set(open_sets(p, mode))
    everything = frozenset(range(p.k))
    return {s for s in opens if everything - s in opens}


def component_unions(p: SpecPoset) -> set[frozenset[int]]:
    comps = p.components
    out = set()
    for mask in range(1 << len(comps)):
        out.add(frozenset().union(*(c for i, c in enumerate(comps) if mask >> i & 1)))
    return out


@dataclass
class TopologyView:
    poset: SpecPoset
    mode: str

    @property
    def opens(self) -> list[frozenset[int]]:
        return open_sets(self.poset, self.mode)

    @property
    def clopens(self) -> set[frozenset[int]]:
        return clopen_sets(self.poset, self.mode)


def is_continuous(p: SpecPoset, mapping: dict[int, int], target: Sequence[int], mode: str) -> bool:
    """Continuity of a map into the subspace ``target`` for the given topology.

    Checked on preimages of every open of the subspace topology on ``target``.
    """
    target = frozenset(target)
    subspace_opens = {s & target for s in open_sets(p, mode)}
    opens = set(open_sets(p, mode))
    for u in subspace_opens:
        pre = frozenset(a for a in range(p.k) if mapping[a] in u)
        if pre not in opens:
            return False
    return True


# -- shape flags ------------------------------------------------------------------


SHAPE_FLAGS = ("mp_shape", "gelfand_shape", "zero_dim_shape", "purified_shape", "clean_shape")


def _separated(p: SpecPoset, points: Sequence[int]) -> bool:
    comps = [p.component_of(a) for a in points]
    return len(set(comps)) == len(comps)


def shape_flags(p: SpecPoset) -> dict[str, bool]:
    mp = all(len(p.minimals_below(a)) == 1 for a in range(p.k))
    gelfand = all(len(p.maximals_above(a)) == 1 for a in range(p.k))
    return {
        "mp_shape": mp,
        "gelfand_shape": gelfand,
        "zero_dim_shape": all(not p.lt(a, b) for a in range(p.k) for b in range(p.k)),
        "purified_shape": _separated(p, p.minimal),
        "clean_shape": gelfand and _separated(p, p.maximal),
    }


@dataclass
class RetractionRefusal:
    witness: int
    reason: str


@dataclass
class Retraction:
    mapping: dict[int, int]
    zariski_continuous: bool
    flat_continuous: bool


def min_retraction_poset(p: SpecPoset) -> Retraction | RetractionRefusal:
    """Send each point to the unique minimal point below it, when there is one."""
    for a in range(p.k):
        below = p.minimals_below(a)
        if len(below) != 1:
            return RetractionRefusal(a, f"{len(below)} minimal points below {p.names[a]}")
    mapping = {a: p.minimals_below(a)[0] for a in range(p.k)}
    flat = is_continuous(p, mapping, p.minimal, FLAT)
    zar = is_continuous(p, mapping, p.minimal, ZARISKI)
    if not flat:
        raise ConsistencyError("mp shape => min retraction flat-continuous", p.literal())
    if not zar:
        # Min is finite, hence compact, so the retraction must be Zariski-continuous
        raise ConsistencyError("mp shape => min retraction Zariski-continuous", p.literal())
    return Retraction(mapping, zar, flat)


def max_retraction_poset(p: SpecPoset) -> Retraction | RetractionRefusal:
    """Send each point to the unique maximal point above it, when there is one."""
    for a in range(p.k):
        above = p.maximals_above(a)
        if len(above) != 1:
            return RetractionRefusal(a, f"{len(above)} maximal points above {p.names[a]}")
    mapping = {a: p.maximals_above(a)[0] for a in range(p.k)}
    zar = is_continuous(p, mapping, p.maximal, ZARISKI)
    flat = is_continuous(p, mapping, p.maximal, FLAT)
    if not zar:
        raise ConsistencyError("gelfand shape => max retraction Zariski-continuous", p.literal())
    if flat != max_subspace_discrete(p):
        raise ConsistencyError("max retraction flat-continuous vs Max discrete", p.literal())
    return Retraction(mapping, zar, flat)


def max_subspace_discrete(p: SpecPoset, mode: str = ZARISKI) -> bool:
    induced = {s & frozenset(p.maximal) for s in open_sets(p, mode)}
    return all(frozenset([m]) in induced for m in p.maximal)


def all_retractions(p: SpecPoset, target: Sequence[int]) -> list[dict[int, int]]:
    """Every map onto ``target`` fixing it pointwise."""
    target = list(target)
    rest = [a for a in range(p.k) if a not in target]
    out = []
    for images in product(target, repeat=len(rest)):
        mapping = {t: t for t in target}
        mapping.update(zip(rest, images))
        out.append(mapping)
    return out


def prime_inverse(p: SpecPoset) -> SpecPoset:
    d = p.dual()
    if d.dual().leq != p.leq:
        raise ConstructionError("order dual is not an involution")
    return d


# -- enumeration ------------------------------------------------------------------


def _extensions(p: SpecPoset) -> Iterable[SpecPoset]:
    """Add one new maximal point above each down-closed subset."""
    k = p.k
    for mask in range(1 << k):
        below = frozenset(i for i in range(k) if mask >> i & 1)
        if not p.is_down_closed(below):
            continue
        rel = [list(row) + [i in below] for i, row in enumerate(p.leq)]
        rel.append([False] * k + [True])
        yield SpecPoset(rel, [f"p{i}" for i in range(k + 1)])


_POSET_CACHE: dict[int, list[SpecPoset]] = {}


def enumerate_posets(k: int) -> list[SpecPoset]:
    """All posets on k points up to isomorphism.

    Every poset arises from a smaller one by adding a maximal point, so the
    classes are grown one point at a time and deduplicated by canonical form.
    """
    if k < 0 or k > MAX_POSET_SIZE:
        raise ConstructionError(f"poset size must be between 0 and {MAX_POSET_SIZE}")
    if k in _POSET_CACHE:
        return list(_POSET_CACHE[k])
    if k == 0:
        result = [SpecPoset([], [])]
    else:
        seen: dict[tuple, SpecPoset] = {}
        for smaller in enumerate_posets(k - 1):
            for ext in _extensions(smaller):
                seen.setdefault(ext.canonical_form, ext)
        result = sorted(seen.values(), key=lambda q: q.canonical_form)
    _POSET_CACHE[k] = result
    return list(result)


def spec_poset_of_ring(ring) -> SpecPoset:
    """The prime spectrum of a table ring ordered by inclusion."""
    from .spectrum import primes

    ps = primes(ring)
    names = [str(p.underlying) for p in ps]
    rel = [[p.members <= q.members for q in ps] for p in ps]
    return SpecPoset(rel, names)


def flat_continuous_retractions(p: SpecPoset) -> list[dict[int, int]]:
    """All retractions onto Min that are flat-continuous."""
    return [r for r in all_retractions(p, p.minimal) if is_continuous(p, r, p.minimal, FLAT)]
