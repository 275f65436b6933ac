"""Prime spectrum of a table ring, localization kernels, the lessened radical
and the classifier battery.

Every flag in :func:`classify` is computed by its defining property and then
re-derived through each equivalent criterion; a disagreement raises
:class:`ConsistencyError` instead of producing a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any

import numpy as np

from .errors import ConsistencyError, ConstructionError, RingMismatchError
from .ideals import (
    IdealHandle,
    enumerate_ideals,
    ideal_sum,
    is_pure,
    maximal_ideals,
    nilradical,
    radical,
    star,
)
from .ring import TableRing, make_quotient


@dataclass(frozen=True, eq=False)
class PrimeIdeal:
    underlying: IdealHandle
    is_minimal: bool
    is_maximal: bool

    @property
    def ring(self) -> TableRing:
        return self.underlying.ring

    @property
    def members(self) -> frozenset[int]:
        return self.underlying.members

    def __eq__(self, other):
        if isinstance(other, PrimeIdeal):
            return self.underlying == other.underlying
        return NotImplemented

    def __hash__(self):
        return hash(self.underlying)

    def __le__(self, other: "PrimeIdeal") -> bool:
        return self.underlying <= other.underlying

    def __str__(self) -> str:
        return str(self.underlying)


@dataclass
class KernelData:
    prime: PrimeIdeal
    kernel: IdealHandle
    kernel_radical: IdealHandle


@dataclass
class LessenedRadical:
    ring: TableRing
    nprime: IdealHandle
    nilradical: IdealHandle

    @property
    def is_lessened(self) -> bool:
        return self.nprime.is_zero()


def is_prime_ideal(ideal: IdealHandle) -> bool:
    """Proper, and xy in P forces x in P or y in P (full scan)."""
    ring = ideal.ring
    if not ideal.is_proper():
        return False
    outside = np.array([x for x in range(ring.n) if x not in ideal.members])
    return not np.isin(ring.mul[np.ix_(outside, outside)], np.array(ideal.sorted_members)).any()


def primes(ring: TableRing) -> list[PrimeIdeal]:
    """All prime ideals, with minimality/maximality read off the full spectrum."""
    return ring.cached("primes", lambda: _primes(ring))


def _primes(ring: TableRing) -> list[PrimeIdeal]:
    found = [i for i in enumerate_ideals(ring) if is_prime_ideal(i)]
    maxes = {m.members for m in maximal_ideals(ring)}
    # order by least generator so that e.g. (2) precedes (3) in Z/12
    found.sort(key=lambda i: (i.small_generators(), len(i)))
    out = []
    for p in found:
        minimal = not any(q.members < p.members for q in found)
        out.append(PrimeIdeal(p, minimal, p.members in maxes))
    # finite rings have dimension zero
    for p in out:
        if not (p.is_minimal and p.is_maximal):
            raise ConsistencyError("finite ring has every prime minimal and maximal", ring.label, str(p))
    return out


def minimal_primes(ring: TableRing) -> list[PrimeIdeal]:
    return [p for p in primes(ring) if p.is_minimal]


def maximal_primes(ring: TableRing) -> list[PrimeIdeal]:
    return [p for p in primes(ring) if p.is_maximal]


def prime_at(ring: TableRing, ideal: IdealHandle) -> PrimeIdeal:
    """Look up an ideal in the spectrum; raise if it is not prime."""
    if ideal.ring is not ring:
        raise RingMismatchError("ideal from another ring")
    for p in primes(ring):
        if p.underlying == ideal:
            return p
    raise ConstructionError(f"{ideal} is not a prime ideal of {ring.label}")


def kernel_members(ring: TableRing, prime_members: frozenset[int]) -> frozenset[int]:
    outside = [x for x in range(ring.n) if x not in prime_members]
    if not outside:
        return frozenset(range(ring.n))
    mask = ring.zero_divisor_mask[:, outside].any(axis=1)
    return frozenset(int(x) for x in np.nonzero(mask)[0])


def kernel_of_localization(p: PrimeIdeal) -> KernelData:
    """Ker(A -> A_p) = {f : fg = 0 for some g outside p}."""
    ring = p.ring

    def compute():
        kernel = IdealHandle(ring, kernel_members(ring, p.members), check=False)
        rad = radical(kernel)
        if not rad.members <= p.members:
            raise ConsistencyError("radical of Ker pi_p lies in p", ring.label, str(p))
        if (rad.members == p.members) != p.is_minimal:
            raise ConsistencyError("radical of Ker pi_p equals p iff p minimal", ring.label, str(p))
        return KernelData(p, kernel, rad)

    return ring.cached(("kernel", p.members), compute)


def localize(p: PrimeIdeal) -> TableRing:
    """A_p, realised as A / Ker pi_p (the canonical map is onto in dimension zero)."""
    ring = p.ring

    def compute():
        kd = kernel_of_localization(p)
        loc = make_quotient(ring, kd.kernel, label=f"({ring.label})_{p}")
        if len(maximal_ideals(loc)) != 1:
            raise ConsistencyError("A_p is local", ring.label, f"localization at {p}")
        return loc

    return ring.cached(("localize", p.members), compute)


def localization_is_surjective(p: PrimeIdeal) -> bool:
    """A -> A_p is onto iff every s outside p is a unit modulo Ker pi_p."""
    ring = p.ring
    kernel = np.array(kernel_of_localization(p).kernel.sorted_members)
    one_plus_k = ring.add[ring.one][kernel]
    for s in range(ring.n):
        if s in p.members:
            continue
        if not np.isin(ring.mul[s], one_plus_k).any():
            return False
    return True


def lessened_radical(ring: TableRing) -> LessenedRadical:
    """N' = intersection of Ker pi_p over minimal primes, next to the nilradical."""

    def compute():
        nprime = frozenset(range(ring.n))
        for p in minimal_primes(ring):
            nprime &= kernel_of_localization(p).kernel.members
        lr = LessenedRadical(ring, IdealHandle(ring, nprime, check=False), nilradical(ring))
        if not lr.nprime.members <= lr.nilradical.members:
            raise ConsistencyError("N' lies in the nilradical", ring.label)
        return lr

    return ring.cached("lessened_radical", compute)


def min_retraction(ring: TableRing) -> dict[PrimeIdeal, PrimeIdeal]:
    """p -> radical(Ker pi_p), the retraction of Spec onto Min."""
    report = classify(ring)
    if not report["mp"]:
        raise ConstructionError(f"{ring.label} is not an mp-ring; no retraction onto Min")
    by_members = {q.members: q for q in primes(ring)}
    out = {}
    for p in primes(ring):
        r = kernel_of_localization(p).kernel_radical.members
        target = by_members.get(r)
        if target is None or not target.is_minimal or not r <= p.members:
            raise ConsistencyError("radical(Ker pi_p) is a minimal prime under p", ring.label, str(p))
        out[p] = target
    for q in minimal_primes(ring):
        if out[q] != q:
            raise ConsistencyError("retraction fixes Min", ring.label, str(q))
    return out


def max_retraction(ring: TableRing) -> dict[PrimeIdeal, PrimeIdeal]:
    """p -> p*, the retraction of Spec onto Max for a Gelfand ring."""
    by_members = {q.members: q for q in primes(ring)}
    out = {}
    for p in primes(ring):
        s = star(p.underlying)
        if not s.is_ideal:
            raise ConsistencyError("p* is an ideal (Gelfand hypothesis)", ring.label, str(p))
        over = [m for m in maximal_primes(ring) if p.members <= m.members]
        target = by_members.get(s.members)
        if len(over) != 1 or target is None or target != over[0]:
            raise ConsistencyError("p* is the unique maximal ideal over p", ring.label, str(p))
        out[p] = target
    return out


# -- classification ----------------------------------------------------------


@dataclass
class Flag:
    value: bool
    witness: Any = None
    criteria: dict[str, bool] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.value


@dataclass
class ClassificationReport:
    ring: TableRing
    flags: dict[str, Flag]
    # cross-flag implications that were verified on the way
    checks: list[str] = field(default_factory=list)

    def __getitem__(self, name: str) -> bool:
        return self.flags[name].value

    def __getattr__(self, name: str):
        flags = self.__dict__.get("flags")
        if flags is not None and name in flags:
            return flags[name].value
        raise AttributeError(name)

    def as_dict(self) -> dict[str, bool]:
        return {k: f.value for k, f in self.flags.items()}


FLAG_NAMES = (
    "zero_dimensional",
    "pi_regular",
    "reduced",
    "quasi_prime",
    "local",
    "field",
    "mp",
    "gelfand",
    "clean",
    "lessened",
    "locally_lessened",
    "purified",
)


def _agree(name: str, ring: TableRing, value: bool, criteria: dict[str, bool]) -> None:
    for crit, v in criteria.items():
        if v != value:
            raise ConsistencyError(f"{name}: definition vs {crit}", ring.label,
                                   f"definition={value}, {crit}={v}")


def _pi_regular_witnesses(ring: TableRing) -> tuple[dict[int, tuple[int, int]], int | None]:
    """For each f, some (n, g) with f^n (1 - f g) = 0, n <= |A|."""
    out = {}
    for f in range(ring.n):
        row = ring.add[ring.one][ring.neg[ring.mul[f]]]  # 1 - f g over all g
        fn = f
        hit = None
        for n in range(1, ring.n + 1):
            zs = np.nonzero(ring.mul[fn][row] == ring.zero)[0]
            if len(zs):
                hit = (n, int(zs[0]))
                break
            fn = int(ring.mul[fn, f])
        if hit is None:
            return out, f
        out[f] = hit
    return out, None


def _names(ring: TableRing, xs) -> list[str]:
    return [ring.name(x) for x in sorted(xs)]


def classify(ring: TableRing) -> ClassificationReport:
    return ring.cached("classify", lambda: _classify(ring))


def _classify(ring: TableRing) -> ClassificationReport:
    nm = ring.name
    spec = primes(ring)
    mins = [p for p in spec if p.is_minimal]
    maxs = [p for p in spec if p.is_maximal]
    kernels = {p: kernel_of_localization(p) for p in spec}
    flags: dict[str, Flag] = {}

    # -- zero dimensional / pi-regular --------------------------------------
    pir, pir_fail = _pi_regular_witnesses(ring)
    pi_regular = pir_fail is None
    pir_w = ({nm(f): {"n": n, "g": nm(g)} for f, (n, g) in pir.items()} if pi_regular
             else {"element": nm(pir_fail)})
    flags["pi_regular"] = Flag(pi_regular, pir_w)

    non_max = [p for p in spec if not p.is_maximal]
    zd = not non_max
    surjective = all(localization_is_surjective(p) for p in mins)
    pure_ideals = [i for i in enumerate_ideals(ring) if is_pure(i)]
    rad_of_unique_pure = all(
        sum(1 for i in pure_ideals if radical(i).members == m.members) == 1 for m in maxs
    )
    crit = {"pi_regular": pi_regular, "surjective_localization": surjective,
            "max_is_radical_of_unique_pure": rad_of_unique_pure}
    _agree("zero_dimensional", ring, zd, crit)
    flags["zero_dimensional"] = Flag(
        zd,
        {"maximal_primes": [str(p) for p in spec]} if zd else {"non_maximal_prime": str(non_max[0])},
        crit,
    )

    # -- reduced, quasi-prime, local, field ---------------------------------
    nil = nilradical(ring)
    reduced = nil.is_zero()
    if reduced:
        red_w = {"nilradical": str(nil)}
    else:
        f = min(x for x in nil.members if x != ring.zero)
        k, x = 1, f
        while x != ring.zero:
            x = int(ring.mul[x, f])
            k += 1
        red_w = {"nilpotent": nm(f), "exponent": k}
    flags["reduced"] = Flag(reduced, red_w)

    qp = len(mins) == 1
    flags["quasi_prime"] = Flag(qp, {"minimal_primes": [str(p) for p in mins]},
                                {"nilradical_prime": is_prime_ideal(nil)})
    _agree("quasi_prime", ring, qp, flags["quasi_prime"].criteria)

    local = len(maxs) == 1
    flags["local"] = Flag(local, {"maximal_ideals": [str(p) for p in maxs]})

    nonunits = [x for x in range(ring.n) if x not in ring.unit_inverses]
    is_field = ring.n > 1 and nonunits == [ring.zero]
    if is_field:
        field_w = {"inverses": {nm(u): nm(v) for u, v in sorted(ring.unit_inverses.items())}}
    elif ring.n == 1:
        field_w = {"reason": "zero ring"}
    else:
        field_w = {"nonzero_nonunit": nm(min(x for x in nonunits if x != ring.zero))}
    flags["field"] = Flag(is_field, field_w, {"zero_ideal_maximal": ring.n > 1 and len(enumerate_ideals(ring)) == 2})
    _agree("field", ring, is_field, flags["field"].criteria)

    # -- mp --------------------------------------------------------------------
    mins_under = {m: [p for p in mins if p.members <= m.members] for m in maxs}
    bad = [m for m in maxs if len(mins_under[m]) != 1]
    mp = not bad
    comaximal = all(
        ideal_sum(kernels[p].kernel, kernels[q].kernel).is_whole() for p, q in combinations(mins, 2)
    )
    local_qp = all(
        sum(1 for P in primes(localize(m)) if P.is_minimal) == 1 for m in maxs
    )
    rad_prime = all(is_prime_ideal(kernels[m].kernel_radical) for m in maxs)
    chain = all(
        kernels[p].kernel_radical == kernels[q].kernel_radical
        for p in spec for q in spec if p.members <= q.members
    )
    crit = {"kernels_comaximal": comaximal, "localizations_quasi_prime": local_qp,
            "radical_kernel_at_max_prime": rad_prime, "radical_kernel_constant_on_chains": chain}
    _agree("mp", ring, mp, crit)
    mp_w = ({str(m): str(mins_under[m][0]) for m in maxs} if mp
            else {"maximal": str(bad[0]), "minimal_primes_below": [str(p) for p in mins_under[bad[0]]]})
    flags["mp"] = Flag(mp, mp_w, crit)

    # -- Gelfand ---------------------------------------------------------------
    max_over = {p: [m for m in maxs if p.members <= m.members] for p in spec}
    gbad = [p for p in spec if len(max_over[p]) != 1]
    gelfand = not gbad
    quot_local = all(len(maximal_ideals(make_quotient(ring, kernels[p].kernel))) == 1 for p in spec)
    stars = {p: star(p.underlying) for p in spec}
    crit = {"quotient_by_kernel_local": quot_local,
            "star_of_every_prime_ideal": all(stars[p].is_ideal for p in spec),
            "star_of_minimal_primes_ideal": all(stars[p].is_ideal for p in mins)}
    _agree("gelfand", ring, gelfand, crit)
    g_w = ({str(p): str(max_over[p][0]) for p in spec} if gelfand
           else {"prime": str(gbad[0]), "maximal_ideals_above": [str(m) for m in max_over[gbad[0]]]})
    flags["gelfand"] = Flag(gelfand, g_w, crit)

    # reduced mp-rings are exactly those with every Ker pi_m prime
    kernels_prime = all(is_prime_ideal(kernels[m].kernel) for m in maxs)
    if (reduced and mp) != kernels_prime:
        raise ConsistencyError("reduced and mp vs Ker pi_m prime for all m", ring.label)
    checks = ["reduced_and_mp_iff_kernels_at_max_prime"]

    # -- clean -----------------------------------------------------------------
    clean_w = {}
    clean_fail = None
    for f in range(ring.n):
        pair = None
        for e in ring.idempotent_indices:
            u = ring.minus(f, e)
            if u in ring.unit_inverses:
                pair = (u, e)
                break
        if pair is None:
            clean_fail = f
            break
        clean_w[nm(f)] = {"unit": nm(pair[0]), "idempotent": nm(pair[1])}
    clean = clean_fail is None
    flags["clean"] = Flag(clean, clean_w if clean else {"element": nm(clean_fail)})

    # -- lessened, locally lessened, purified -------------------------------
    lr = lessened_radical(ring)
    lessened = lr.is_lessened
    nprime_pure = bool(is_pure(lr.nprime))
    crit = {"nprime_pure": nprime_pure}
    _agree("lessened", ring, lessened, crit)
    ls_w = {"nprime": _names(ring, lr.nprime.members), "nilradical": _names(ring, lr.nilradical.members)}
    flags["lessened"] = Flag(lessened, ls_w, crit)

    ll_w = {}
    ll = True
    for m in maxs:
        loc = localize(m)
        lrm = lessened_radical(loc)
        ll_w[str(m)] = _names(loc, lrm.nprime.members)
        if not lrm.is_lessened:
            ll = False
    if ll and not lessened:
        raise ConsistencyError("locally lessened implies lessened", ring.label)
    checks.append("locally_lessened_implies_lessened")
    flags["locally_lessened"] = Flag(ll, {"nprime_of_localizations": ll_w})

    pur_w = {}
    purified = True
    for p, q in permutations(mins, 2):
        es = [e for e in ring.idempotent_indices if e in p.members and e not in q.members]
        if not es:
            purified = False
            pur_w = {"p": str(p), "q": str(q)}
            break
        pur_w[f"{p} \\ {q}"] = nm(es[0])
    if purified and not mp:
        raise ConsistencyError("purified implies mp", ring.label)
    checks.append("purified_implies_mp")
    flags["purified"] = Flag(purified, pur_w)

    return ClassificationReport(ring, {k: flags[k] for k in FLAG_NAMES}, checks)
