"""Ideals of table rings and the ideal predicates: radical, annihilator,
purity, regularity, the star set ``I*`` and principal idempotent generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, ConstructionError, RingMismatchError
from .ring import Elem, TableRing


class IdealHandle:
    """A subset of a ring closed under addition and absorption.

    ``generators`` records provenance when the ideal was built from
    generators; it is ``None`` for ideals obtained by set operations.
    """

    __slots__ = ("ring", "members", "generators")

    def __init__(self, ring: TableRing, members: Iterable[int], generators: Sequence[int] | None = None,
                 *, check: bool = True):
        self.ring = ring
        self.members = frozenset(int(m) for m in members)
        self.generators = None if generators is None else tuple(int(g) for g in generators)
        if check:
            self._check()

    def _check(self) -> None:
        ring, mem = self.ring, self.members
        if ring.zero not in mem:
            raise ConstructionError("an ideal must contain zero")
        idx = np.array(sorted(mem))
        if not np.isin(ring.add[np.ix_(idx, idx)], idx).all():
            raise ConstructionError("subset is not closed under addition")
        if not np.isin(ring.mul[idx], idx).all():
            raise ConstructionError("subset is not closed under multiplication by ring elements")
        if self.generators is not None:
            if ideal_from_generators(ring, self.generators).members != mem:
                raise ConstructionError("generators do not generate the given members")

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, x) -> bool:
        if isinstance(x, Elem):
            x = self.ring.check_elem(x)
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "IdealHandle") -> bool:
        _same_ring(self, other)
        return self.members <= other.members

    def __lt__(self, other: "IdealHandle") -> bool:
        _same_ring(self, other)
        return self.members < other.members

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_sum(self, other)

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_product(self, other)

    def __and__(self, other: "IdealHandle") -> "IdealHandle":
        _same_ring(self, other)
        return IdealHandle(self.ring, self.members & other.members, check=False)

    @property
    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def is_zero(self) -> bool:
        return self.members == {self.ring.zero}

    def is_whole(self) -> bool:
        return len(self.members) == self.ring.n

    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    def small_generators(self) -> tuple[int, ...]:
        """A short generating set, for display.  Principal ideals get one generator."""
        ring = self.ring

        def compute():
            if self.is_zero():
                return (ring.zero,)
            mem = sorted(self.members)
            span = {ring.zero}
            gens = []
            while len(span) < len(self.members):
                best = max(
                    (x for x in mem if x not in span),
                    key=lambda x: (len(span | principal_members(ring, x)), -x),
                )
                gens.append(best)
                span = ideal_from_generators(ring, gens).members
            return tuple(gens)

        return ring.cached(("small_gens", self.members), compute)

    def names(self) -> list[str]:
        return [self.ring.name(m) for m in self.sorted_members]

    def __str__(self) -> str:
        return "(" + ", ".join(self.ring.name(g) for g in self.small_generators()) + ")"

    def __repr__(self) -> str:
        return f"IdealHandle({self.ring.label}: {self})"


def _same_ring(a: IdealHandle, b: IdealHandle) -> None:
    if a.ring is not b.ring:
        raise RingMismatchError(f"ideals of {a.ring.label} and {b.ring.label} mixed")


def _as_index(ring: TableRing, x) -> int:
    if isinstance(x, Elem):
        return ring.check_elem(x)
    if isinstance(x, str):
        return ring.index(x)
    return int(x)


def principal_members(ring: TableRing, f: int) -> frozenset[int]:
    # Af is additively closed in a commutative unital ring: af + bf = (a+b)f
    return ring.cached(("principal", f), lambda: frozenset(int(x) for x in np.unique(ring.mul[f])))


def _sum_members(ring: TableRing, a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    if a <= b:
        return b
    if b <= a:
        return a
    ia = np.fromiter(a, dtype=np.int64)
    ib = np.fromiter(b, dtype=np.int64)
    return frozenset(int(x) for x in np.unique(ring.add[np.ix_(ia, ib)]))


def ideal_from_generators(ring: TableRing, gens: Iterable) -> IdealHandle:
    """The least ideal containing ``gens``."""
    idx = [_as_index(ring, g) for g in gens]
    members = frozenset([ring.zero])
    for g in idx:
        if g not in members:
            members = _sum_members(ring, members, principal_members(ring, g))
    return IdealHandle(ring, members, idx, check=False)


def zero_ideal(ring: TableRing) -> IdealHandle:
    return IdealHandle(ring, [ring.zero], [ring.zero], check=False)


def unit_ideal(ring: TableRing) -> IdealHandle:
    return IdealHandle(ring, range(ring.n), [ring.one], check=False)


def ideal_sum(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_ring(a, b)
    return IdealHandle(a.ring, _sum_members(a.ring, a.members, b.members), check=False)


def ideal_product(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_ring(a, b)
    ring = a.ring
    ia = np.array(sorted(a.members))
    ib = np.array(sorted(b.members))
    products = sorted(int(x) for x in np.unique(ring.mul[np.ix_(ia, ib)]))
    return IdealHandle(ring, ideal_from_generators(ring, products).members, check=False)


def preimage(ideal: IdealHandle, index_map: np.ndarray, ring: TableRing) -> IdealHandle:
    """Pull an ideal back along a ring map given as an index array on ``ring``."""
    mask = np.isin(index_map, np.array(sorted(ideal.members)))
    return IdealHandle(ring, np.nonzero(mask)[0], check=False)


class IdealList(list):
    """A list of ideals carrying a truncation flag."""

    truncated: bool = False
    rounds: int = 0


def enumerate_ideals(ring: TableRing, max_count: int | None = None) -> IdealList:
    """All ideals of the ring, smallest first.

    Round k holds the ideals generated by k elements (each is a round k-1
    ideal plus one principal ideal).  Rounds continue until one adds nothing.
    """
    key = ("ideals", max_count)
    return ring.cached(key, lambda: _enumerate_ideals(ring, max_count))


def _enumerate_ideals(ring: TableRing, max_count: int | None) -> IdealList:
    principals = {}
    for f in range(ring.n):
        principals.setdefault(principal_members(ring, f), f)
    found: dict[frozenset[int], None] = dict.fromkeys(principals)
    frontier = list(found)
    rounds = 1
    truncated = False
    while frontier and not truncated:
        new = []
        for base in frontier:
            for p in principals:
                if p <= base:
                    continue
                s = _sum_members(ring, base, p)
                if s not in found:
                    found[s] = None
                    new.append(s)
                    if max_count is not None and len(found) > max_count:
                        truncated = True
                        break
            if truncated:
                break
        frontier = new
        rounds += 1
    members = sorted(found, key=lambda m: (len(m), sorted(m)))
    if max_count is not None and len(members) > max_count:
        members = members[:max_count]
        truncated = True
    out = IdealList(IdealHandle(ring, m, check=False) for m in members)
    out.truncated = truncated
    out.rounds = rounds
    return out


def maximal_ideals(ring: TableRing) -> list[IdealHandle]:
    """Proper ideals maximal under inclusion among all enumerated ideals."""

    def compute():
        proper = [i for i in enumerate_ideals(ring) if i.is_proper()]
        return [i for i in proper if not any(i.members < j.members for j in proper)]

    return ring.cached("maximal", compute)


def radical(ideal: IdealHandle) -> IdealHandle:
    """{f : f^k in I for some k >= 1}.

    Searching powers up to the orbit length suffices: the powers of f in a
    ring of n elements repeat after at most n steps, so k <= n.
    """
    ring = ideal.ring
    mem = ideal.members
    return IdealHandle(ring, [f for f in range(ring.n) if ring.power_orbits[f] & mem], check=False)


def nilradical(ring: TableRing) -> IdealHandle:
    return ring.cached("nilradical", lambda: radical(zero_ideal(ring)))


def annihilator(f: Elem) -> IdealHandle:
    ring = f.ring
    return IdealHandle(ring, np.nonzero(ring.zero_divisor_mask[f.index])[0], check=False)


@dataclass
class Verdict:
    """A boolean with the element that decided it (``None`` when vacuous)."""

    value: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.value


def is_pure(ideal: IdealHandle) -> Verdict:
    """Purity, checked two ways that must agree.

    For a true verdict the witness maps each f to a g in I with f(1-g) = 0;
    for a false verdict it is the failing f.
    """
    ring = ideal.ring
    mem = np.array(ideal.sorted_members)
    one_minus = ring.add[ring.one][ring.neg[mem]]  # 1 - g for g in I
    witnesses = {}
    failing = None
    for f in ideal.sorted_members:
        hits = np.nonzero(ring.mul[f][one_minus] == ring.zero)[0]
        if len(hits):
            witnesses[f] = int(mem[hits[0]])
        elif failing is None:
            failing = f
    scan = failing is None

    ann_route = True
    for f in ideal.sorted_members:
        ann = frozenset(np.nonzero(ring.zero_divisor_mask[f])[0].tolist())
        if ring.one not in _sum_members(ring, ann, ideal.members):
            ann_route = False
            break
    if scan != ann_route:
        raise ConsistencyError("pure: f(1-g)=0 scan vs Ann(f)+I=A", ring.label, str(ideal))
    return Verdict(True, witnesses) if scan else Verdict(False, failing)


def is_regular_ideal(ideal: IdealHandle) -> bool:
    ring = ideal.ring
    idem = [e for e in ring.idempotent_indices if e in ideal.members]
    return ideal_from_generators(ring, idem).members == ideal.members


@dataclass
class StarSet:
    """The set of f with Af + I proper, and whether it happens to be an ideal."""

    ring: TableRing
    ideal: IdealHandle
    members: frozenset[int]
    is_ideal: bool

    def names(self) -> list[str]:
        return [self.ring.name(m) for m in sorted(self.members)]

    def as_ideal(self) -> IdealHandle | None:
        return IdealHandle(self.ring, self.members, check=False) if self.is_ideal else None


def star(ideal: IdealHandle) -> StarSet:
    ring = ideal.ring
    members = frozenset(
        f for f in range(ring.n)
        if ring.one not in _sum_members(ring, principal_members(ring, f), ideal.members)
    )
    over = [m for m in maximal_ideals(ring) if ideal.members <= m.members]
    union = frozenset().union(*(m.members for m in over)) if over else frozenset()
    if union != members:
        raise ConsistencyError("I* pointwise vs union of maximal ideals over I", ring.label, str(ideal))
    if members:
        idx = np.array(sorted(members))
        closed = bool(np.isin(ring.add[np.ix_(idx, idx)], idx).all())
    else:
        closed = False
    return StarSet(ring, ideal, members, closed)


def principal_idempotent_generator(ideal: IdealHandle) -> Elem | None:
    """The unique idempotent e with I = Ae when I*I = I, else None."""
    ring = ideal.ring
    if ideal_product(ideal, ideal).members != ideal.members:
        return None
    gens = [e for e in ring.idempotent_indices
            if e in ideal.members and principal_members(ring, e) == ideal.members]
    if len(gens) != 1:
        raise ConsistencyError("idempotent ideal has a unique idempotent generator", ring.label,
                               f"{ideal}: {len(gens)} candidates")
    return Elem(ring, gens[0])
