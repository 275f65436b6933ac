"""Finite commutative unital rings given by explicit operation tables.

Elements of a ring with ``n`` elements are the indices ``0..n-1``.  The
tables are numpy arrays and are frozen after construction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import ConstructionError, RingMismatchError, SizeCapError

DEFAULT_SIZE_CAP = 4096
SIZE_CAP_ENV = "SPECTRA_LAB_SIZE_CAP"
# full O(n^3) axiom scans are skipped above this size for trusted constructors
TRUSTED_VALIDATION_LIMIT = 256
DEFAULT_NODE_BUDGET = 10**6

_size_cap_override: int | None = None


def size_cap() -> int:
    if _size_cap_override is not None:
        return _size_cap_override
    env = os.environ.get(SIZE_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConstructionError(f"{SIZE_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_SIZE_CAP


def set_size_cap(cap: int | None) -> None:
    """Override the size cap for this process (``None`` restores the default)."""
    global _size_cap_override
    if cap is not None and cap < 1:
        raise ConstructionError("size cap must be positive")
    _size_cap_override = cap


def check_size(n: int) -> None:
    cap = size_cap()
    if n > cap:
        raise SizeCapError(n, cap)


def _dtype_for(n: int):
    return np.int16 if n < 2**15 else np.int32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TableRing:
    """A finite commutative ring with 1, stored as addition/multiplication tables.

    ``components`` is set for rings built by :func:`make_product`; ``parent``
    and ``surjection`` for rings built by :func:`make_quotient`.
    """

    def __init__(
        self,
        add_table,
        mul_table,
        zero: int,
        one: int,
        label: str,
        names: Sequence[str] | None = None,
        *,
        validate: bool = True,
        components: tuple["TableRing", ...] | None = None,
        coords: np.ndarray | None = None,
        parent: "TableRing | None" = None,
        surjection: np.ndarray | None = None,
        ideal_members: frozenset[int] | None = None,
    ):
        add = np.array(add_table, copy=True)
        mul = np.array(mul_table, copy=True)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise ConstructionError("tables must be square and of equal shape")
        n = add.shape[0]
        if n < 1:
            raise ConstructionError("a ring needs at least one element")
        check_size(n)
        if not (0 <= zero < n and 0 <= one < n):
            raise ConstructionError("zero/one index out of range")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise ConstructionError("table entries out of range")
        dt = _dtype_for(n)
        self.add = add.astype(dt)
        self.mul = mul.astype(dt)
        self.add.flags.writeable = False
        self.mul.flags.writeable = False
        self.n = n
        self.zero = zero
        self.one = one
        self.label = label
        if names is None:
            names = [str(i) for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise ConstructionError("element names must be distinct, one per element")
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}
        self.components = components
        self.coords = coords
        self.parent = parent
        self.surjection = surjection
        self.ideal_members = ideal_members
        self._cache: dict = {}
        if validate:
            self.validate()

    # -- basic access -----------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<TableRing {self.label} ({self.n} elements)>"

    def __iter__(self):
        return iter(range(self.n))

    def name(self, i: int) -> str:
        return self.names[i]

    def index(self, name: str) -> int:
        try:
            return self._index[name.replace(" ", "")]
        except KeyError:
            raise ConstructionError(f"{name!r} is not an element of {self.label}") from None

    def elem(self, x: "int | str | Elem") -> "Elem":
        if isinstance(x, Elem):
            self.check_elem(x)
            return x
        if isinstance(x, str):
            return Elem(self, self.index(x))
        if not 0 <= int(x) < self.n:
            raise ConstructionError(f"index {x} out of range for {self.label}")
        return Elem(self, int(x))

    def check_elem(self, e: "Elem") -> int:
        if e.ring is not self:
            raise RingMismatchError(f"element of {e.ring.label} used in {self.label}")
        return e.index

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = int(self.mul[r, a])
        return r

    def cached(self, key, compute):
        """Memoize derived data on the ring (the ring itself never changes)."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        """Scan the tables for the commutative unital ring axioms."""
        n, add, mul, z, o = self.n, self.add, self.mul, self.zero, self.one
        ar = np.arange(n)
        if not np.array_equal(add, add.T):
            raise ConstructionError("addition is not commutative")
        if not np.array_equal(mul, mul.T):
            raise ConstructionError("multiplication is not commutative")
        if not np.array_equal(add[z], ar):
            raise ConstructionError("zero is not an additive identity")
        if not np.array_equal(mul[o], ar):
            raise ConstructionError("one is not a multiplicative identity")
        if n > 1 and z == o:
            raise ConstructionError("zero equals one in a nontrivial ring")
        if not all((add[i] == z).any() for i in range(n)):
            raise ConstructionError("some element has no additive inverse")
        for a in range(n):
            # (a+b)+c == a+(b+c) and (ab)c == a(bc) over all b, c
            if not np.array_equal(add[add[a]], add[a][add]):
                raise ConstructionError("addition is not associative")
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise ConstructionError("multiplication is not associative")
            # a(b+c) == ab + ac
            if not np.array_equal(mul[a][add], add[np.ix_(mul[a], mul[a])]):
                raise ConstructionError("multiplication does not distribute over addition")

    # -- cached derived data ---------------------------------------------

    @cached_property
    def neg(self) -> np.ndarray:
        neg = np.argmax(self.add == self.zero, axis=1)
        neg.flags.writeable = False
        return neg

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        """``mask[f, g]`` is true when ``f*g == 0``."""
        m = self.mul == self.zero
        m.flags.writeable = False
        return m

    @cached_property
    def idempotent_indices(self) -> tuple[int, ...]:
        ar = np.arange(self.n)
        return tuple(int(i) for i in np.nonzero(self.mul[ar, ar] == ar)[0])

    @cached_property
    def unit_inverses(self) -> dict[int, int]:
        hits = self.mul == self.one
        inv = {}
        for u in range(self.n):
            row = np.nonzero(hits[u])[0]
            if len(row):
                inv[u] = int(row[0])
        return inv

    @cached_property
    def power_orbits(self) -> tuple[frozenset[int], ...]:
        """The set {f, f^2, f^3, ...} for every f."""
        out = []
        for f in range(self.n):
            seen = []
            seen_set = set()
            x = f
            while x not in seen_set:
                seen.append(x)
                seen_set.add(x)
                x = int(self.mul[x, f])
            out.append(frozenset(seen))
        return tuple(out)

    @cached_property
    def additive_orders(self) -> tuple[int, ...]:
        orders = []
        for f in range(self.n):
            k, x = 1, f
            while x != self.zero:
                x = int(self.add[x, f])
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def nilpotent_indices(self) -> tuple[int, ...]:
        return tuple(f for f in range(self.n) if self.zero in self.power_orbits[f])

    # -- structure maps ---------------------------------------------------

    def projection(self, k: int) -> np.ndarray:
        """Index map onto the k-th factor of a product ring."""
        if self.components is None:
            raise ConstructionError(f"{self.label} was not built as a product")
        return self.coords[:, k]

    def from_coords(self, coords: Sequence[int]) -> int:
        if self.components is None:
            raise ConstructionError(f"{self.label} was not built as a product")
        idx = 0
        for c, f in zip(coords, self.components):
            idx = idx * f.n + int(c)
        return idx


@dataclass(frozen=True)
class Elem:
    """An element of a specific ring."""

    ring: TableRing
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ring.n:
            raise ConstructionError(f"index {self.index} out of range for {self.ring.label}")

    def __int__(self) -> int:
        return self.index

    def __index__(self) -> int:
        return self.index

    def __str__(self) -> str:
        return self.ring.name(self.index)

    def __repr__(self) -> str:
        return f"Elem({self.ring.label}: {self})"

    def _other(self, other: "Elem | int") -> int:
        if isinstance(other, Elem):
            return self.ring.check_elem(other)
        return int(other)

    def __add__(self, other):
        return Elem(self.ring, self.ring.plus(self.index, self._other(other)))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.times(self.index, self._other(other)))

    def __sub__(self, other):
        return Elem(self.ring, self.ring.minus(self.index, self._other(other)))


# -- constructors -----------------------------------------------------------


def make_zmod(n: int, label: str | None = None) -> TableRing:
    """The ring Z/n."""
    if n < 1:
        raise ConstructionError("Z/n needs n >= 1")
    check_size(n)
    ar = np.arange(n)
    add = (ar[:, None] + ar[None, :]) % n
    mul = (ar[:, None] * ar[None, :]) % n
    return TableRing(add, mul, 0, 1 % n, label or f"Z/{n}", validate=n <= TRUSTED_VALIDATION_LIMIT)


def make_gf(p: int) -> TableRing:
    """The prime field GF(p); only prime orders are supported."""
    if not is_prime(p):
        raise ConstructionError(f"GF({p}): only prime fields are supported")
    return make_zmod(p, label=f"GF({p})")


def _needs_parens(label: str) -> bool:
    # a product label nested as a factor must be grouped
    depth = 0
    for i, ch in enumerate(label):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and label.startswith(" x ", i):
            return True
    return False


def product_label(labels: Iterable[str]) -> str:
    return " x ".join(f"({lab})" if _needs_parens(lab) else lab for lab in labels)


def make_product(factors: Sequence[TableRing]) -> TableRing:
    """Componentwise product of the factors; coordinates are kept for projections."""
    factors = tuple(factors)
    if not factors:
        raise ConstructionError("a product needs at least one factor")
    sizes = [f.n for f in factors]
    n = prod(sizes)
    check_size(n)
    coords = np.array(np.unravel_index(np.arange(n), sizes)).T.reshape(n, len(factors))
    strides = [prod(sizes[k + 1:]) for k in range(len(factors))]
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for k, f in enumerate(factors):
        c = coords[:, k]
        add += f.add[np.ix_(c, c)].astype(np.int64) * strides[k]
        mul += f.mul[np.ix_(c, c)].astype(np.int64) * strides[k]
    zero = sum(f.zero * s for f, s in zip(factors, strides))
    one = sum(f.one * s for f, s in zip(factors, strides))
    if len(factors) == 1:
        names = list(factors[0].names)
    else:
        names = ["(" + ",".join(f.name(int(ci)) for f, ci in zip(factors, row)) + ")" for row in coords]
    coords.flags.writeable = False
    return TableRing(
        add,
        mul,
        zero,
        one,
        product_label(f.label for f in factors),
        names,
        validate=n <= TRUSTED_VALIDATION_LIMIT,
        components=factors,
        coords=coords,
    )


def make_quotient(ring: TableRing, ideal, label: str | None = None) -> TableRing:
    """The quotient ring by an ideal; elements are cosets named by their least representative.

    ``ideal`` is an :class:`~spectra_lab.ideals.IdealHandle` of ``ring``.
    """
    if ideal.ring is not ring:
        raise RingMismatchError(f"ideal of {ideal.ring.label} used to quotient {ring.label}")
    members = np.array(sorted(ideal.members))
    surj = np.full(ring.n, -1, dtype=np.int64)
    reps = []
    for x in range(ring.n):
        if surj[x] >= 0:
            continue
        coset = ring.add[x, members]
        surj[coset] = len(reps)
        reps.append(x)
    reps = np.array(reps)
    add = surj[ring.add[np.ix_(reps, reps)]]
    mul = surj[ring.mul[np.ix_(reps, reps)]]
    names = [f"[{ring.name(int(r))}]" for r in reps]
    if label is None:
        label = quotient_label(ring, ideal)
    surj.flags.writeable = False
    m = len(reps)
    return TableRing(
        add,
        mul,
        int(surj[ring.zero]),
        int(surj[ring.one]),
        label,
        names,
        validate=m <= TRUSTED_VALIDATION_LIMIT,
        parent=ring,
        surjection=surj,
        ideal_members=frozenset(ideal.members),
    )


def quotient_label(ring: TableRing, ideal) -> str:
    base = f"({ring.label})" if _needs_parens(ring.label) else ring.label
    gens = ideal.generators if ideal.generators is not None else ideal.small_generators()
    return f"{base} / ({', '.join(ring.name(g) for g in gens)})"


# -- element scans ----------------------------------------------------------


def idempotents(ring: TableRing) -> list[Elem]:
    return [Elem(ring, i) for i in ring.idempotent_indices]


def units(ring: TableRing) -> list[Elem]:
    return [Elem(ring, u) for u in sorted(ring.unit_inverses)]


def unit_inverse(u: Elem) -> Elem | None:
    inv = u.ring.unit_inverses.get(u.index)
    return None if inv is None else Elem(u.ring, inv)


# -- isomorphism ------------------------------------------------------------


class IsoVerdict(Enum):
    ISOMORPHIC = "isomorphic"
    NOT_ISOMORPHIC = "not_isomorphic"
    INCONCLUSIVE = "inconclusive"


@dataclass
class IsoResult:
    verdict: IsoVerdict
    witness: tuple[int, ...] | None = None
    reason: str = ""
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.verdict is IsoVerdict.ISOMORPHIC


def _signatures(ring: TableRing) -> list[tuple]:
    idem = set(ring.idempotent_indices)
    units_ = ring.unit_inverses
    zd = ring.zero_divisor_mask
    sigs = []
    for f in range(ring.n):
        orbit = ring.power_orbits[f]
        nil_index = 0
        if ring.zero in orbit:
            nil_index, x = 1, f
            while x != ring.zero:
                x = int(ring.mul[x, f])
                nil_index += 1
        sigs.append(
            (ring.additive_orders[f], f in idem, f in units_, nil_index, len(orbit), int(zd[f].sum()))
        )
    return sigs


def _additive_span(ring: TableRing, gens: Sequence[int]) -> set[int]:
    span = {ring.zero}
    frontier = [ring.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(ring.add[x, g])
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def _extend_additive(a: TableRing, b: TableRing, gens, images) -> dict[int, int] | None:
    """Extend gens -> images to an additive map on their span; None if inconsistent."""
    phi = {a.zero: b.zero}
    frontier = [a.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = int(a.add[x, g])
                img = int(b.add[phi[x], h])
                if y in phi:
                    if phi[y] != img:
                        return None
                else:
                    phi[y] = img
                    nxt.append(y)
        frontier = nxt
    return phi


def is_isomorphic(a: TableRing, b: TableRing, node_budget: int = DEFAULT_NODE_BUDGET) -> IsoResult:
    """Search for a unital ring isomorphism a -> b.

    Invariants (size, unit and idempotent counts, element signatures) prune
    first; then images of additive generators are backtracked.  Exhausting
    ``node_budget`` yields an inconclusive verdict.
    """
    if a.n != b.n:
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="sizes differ")
    if len(a.unit_inverses) != len(b.unit_inverses):
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="unit counts differ")
    if len(a.idempotent_indices) != len(b.idempotent_indices):
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="idempotent counts differ")
    if sorted(a.additive_orders) != sorted(b.additive_orders):
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="additive orders differ")
    sa, sb = _signatures(a), _signatures(b)
    if sorted(sa) != sorted(sb):
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="element signatures differ")

    gens = [a.one]
    span = _additive_span(a, gens)
    while len(span) < a.n:
        g = max((x for x in range(a.n) if x not in span), key=lambda x: (a.additive_orders[x], -x))
        gens.append(g)
        span = _additive_span(a, gens)
    candidates = [[y for y in range(b.n) if sb[y] == sa[g]] for g in gens]
    candidates[0] = [b.one]

    nodes = 0
    images: list[int] = []

    def search(i: int) -> tuple[int, ...] | None | bool:
        nonlocal nodes
        if i == len(gens):
            phi = _extend_additive(a, b, gens, images)
            if phi is None or len(phi) != a.n or len(set(phi.values())) != a.n:
                return None
            m = np.array([phi[x] for x in range(a.n)])
            if np.array_equal(m[a.mul], b.mul[np.ix_(m, m)]):
                return tuple(int(v) for v in m)
            return None
        for y in candidates[i]:
            nodes += 1
            if nodes > node_budget:
                return False
            images.append(y)
            phi = _extend_additive(a, b, gens[: i + 1], images)
            if phi is not None and len(set(phi.values())) == len(phi):
                found = search(i + 1)
                if found is False or found:
                    images.pop()
                    return found
            images.pop()
        return None

    found = search(0)
    if found is False:
        return IsoResult(IsoVerdict.INCONCLUSIVE, reason="node budget exhausted", nodes=nodes)
    if found is None:
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, reason="exhaustive search", nodes=nodes)
    return IsoResult(IsoVerdict.ISOMORPHIC, witness=found, nodes=nodes)


def check_isomorphism(a: TableRing, b: TableRing, phi: Sequence[int]) -> bool:
    """Verify that ``phi`` (indexed by elements of a) is a unital ring isomorphism."""
    m = np.asarray(phi)
    if len(m) != a.n or a.n != b.n or len(set(m.tolist())) != a.n:
        return False
    if m[a.one] != b.one:
        return False
    return bool(
        np.array_equal(m[a.add], b.add[np.ix_(m, m)]) and np.array_equal(m[a.mul], b.mul[np.ix_(m, m)])
    )

