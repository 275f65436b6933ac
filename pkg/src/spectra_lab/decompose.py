"""Chinese-remainder decompositions of table rings into local rings, lessened
quasi-prime rings, integral domains or fields.

A refusal is an ordinary return value carrying the witness that blocks the
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Any

from .errors import ConsistencyError
from .ideals import IdealHandle, ideal_sum, principal_idempotent_generator
from .ring import TableRing, check_isomorphism, is_isomorphic, make_product, make_quotient, make_zmod
from .spectrum import classify, kernel_of_localization, maximal_primes, minimal_primes

KINDS = ("local", "lessened_quasi_prime", "domain", "field")


@dataclass
class Decomposition:
    original: TableRing
    factors: list[TableRing]
    kernels: list[IdealHandle]
    iso_witness: tuple[int, ...]  # element of original -> element of product
    kind: str
    product: TableRing
    generators: list[str] = field(default_factory=list)  # idempotent generators, by name
    canonical: list[str | None] = field(default_factory=list)

    @property
    def refused(self) -> bool:
        return False


@dataclass
class Refusal:
    original: TableRing
    kind: str
    reason: str
    witness: dict[str, Any]

    @property
    def refused(self) -> bool:
        return True


def canonical_name(ring: TableRing) -> str | None:
    """Best-effort identification against Z/n of the same order."""
    cyclic = make_zmod(ring.n)
    return f"Z/{ring.n}" if is_isomorphic(ring, cyclic) else None


def _crt(ring: TableRing, kernels: list[IdealHandle], kind: str) -> Decomposition:
    for a, b in combinations(kernels, 2):
        if not ideal_sum(a, b).is_whole():
            raise ConsistencyError("CRT kernels pairwise comaximal", ring.label, f"{a} + {b}")
    inter = reduce(lambda s, k: s & k.members, kernels, frozenset(range(ring.n)))
    if inter != {ring.zero}:
        raise ConsistencyError("CRT kernels intersect in zero", ring.label)
    if not kernels:
        # the zero ring is the empty product
        prod_ring = make_zmod(1)
        return Decomposition(ring, [], [], (0,), kind, prod_ring)
    factors = [make_quotient(ring, k) for k in kernels]
    prod_ring = make_product(factors)
    witness = tuple(
        prod_ring.from_coords([f.surjection[x] for f in factors]) for x in range(ring.n)
    )
    if len(set(witness)) != ring.n or prod_ring.n != ring.n:
        raise ConsistencyError("CRT map is bijective", ring.label)
    if not check_isomorphism(ring, prod_ring, witness):
        raise ConsistencyError("CRT map is a ring isomorphism", ring.label)
    return Decomposition(ring, factors, kernels, witness, kind, prod_ring,
                         canonical=[canonical_name(f) for f in factors])


def _idempotent_generators(ring: TableRing, kernels, what: str) -> list[str]:
    gens = []
    for k in kernels:
        e = principal_idempotent_generator(k)
        if e is None:
            raise ConsistencyError(f"{what} is idempotent with an idempotent generator", ring.label, str(k))
        gens.append(str(e))
    return gens


def decompose_local(ring: TableRing) -> Decomposition:
    """A = prod of A / Ker pi_m over the maximal ideals m."""
    maxs = maximal_primes(ring)
    kernels = [kernel_of_localization(m).kernel for m in maxs]
    dec = _crt(ring, kernels, "local")
    for f in dec.factors:
        if not classify(f)["local"]:
            raise ConsistencyError("decompose_local factors are local", ring.label, f.label)
    dec.generators = _idempotent_generators(ring, kernels, "Ker pi_m")
    if len(dec.factors) != len(maxs):
        raise ConsistencyError("one local factor per maximal ideal", ring.label)
    return dec


def decompose_lessened_quasi_prime(ring: TableRing) -> Decomposition:
    """A = prod of A / Ker pi_p over the minimal primes p."""
    mins = minimal_primes(ring)
    kernels = [kernel_of_localization(p).kernel for p in mins]
    dec = _crt(ring, kernels, "lessened_quasi_prime")
    for f in dec.factors:
        rep = classify(f)
        if not (rep["lessened"] and rep["quasi_prime"]):
            raise ConsistencyError("A / Ker pi_p is lessened quasi-prime", ring.label, f.label)
    dec.generators = _idempotent_generators(ring, kernels, "Ker pi_p")
    return dec


def decompose_domains(ring: TableRing) -> Decomposition | Refusal:
    """A = prod of A / p over minimal primes, when A is reduced."""
    rep = classify(ring)
    mins = minimal_primes(ring)
    gens = {p: principal_idempotent_generator(p.underlying) for p in mins}
    criterion = all(e is not None for e in gens.values())
    if criterion != (rep["reduced"] and rep["mp"]):
        raise ConsistencyError("product of domains: reduced mp vs minimal primes idempotent", ring.label)
    if not criterion:
        bad = next(p for p in mins if gens[p] is None)
        return Refusal(
            ring, "domain", "not reduced",
            {"nilpotent": rep.flags["reduced"].witness.get("nilpotent"),
             "non_idempotent_minimal_prime": str(bad)},
        )
    dec = _crt(ring, [p.underlying for p in mins], "domain")
    for f in dec.factors:
        if not classify(f)["field"]:
            raise ConsistencyError("finite integral domain factor is a field", ring.label, f.label)
    dec.generators = [str(gens[p]) for p in mins]
    return dec


def decompose_fields(ring: TableRing) -> Decomposition | Refusal:
    """A = prod of A / m, decided by every maximal ideal being generated by an idempotent."""
    rep = classify(ring)
    maxs = maximal_primes(ring)
    gens = {m: principal_idempotent_generator(m.underlying) for m in maxs}
    bad = [m for m in maxs if gens[m] is None]
    if bool(bad) == rep["reduced"]:
        raise ConsistencyError("product of fields iff reduced (finite rings)", ring.label)
    if bad:
        witness = {"maximal_ideal": str(bad[0])}
        if "nilpotent" in rep.flags["reduced"].witness:
            witness["nilpotent"] = rep.flags["reduced"].witness["nilpotent"]
        return Refusal(ring, "field", "a maximal ideal is not idempotent", witness)
    dec = _crt(ring, [m.underlying for m in maxs], "field")
    for f in dec.factors:
        if not classify(f)["field"]:
            raise ConsistencyError("A / m is a field", ring.label, f.label)
    dec.generators = [str(gens[m]) for m in maxs]
    return dec


DECOMPOSERS = {
    "local": decompose_local,
    "lqp": decompose_lessened_quasi_prime,
    "domains": decompose_domains,
    "fields": decompose_fields,
}
