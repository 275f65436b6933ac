"""Quotients k[x1..xn]/M of polynomial rings over a prime field by monomial ideals.

Minimal primes are generated by variables: they correspond to the minimal
vertex covers of the hypergraph whose edges are the supports of the
generators of M.

Membership in Ker(A -> A_p) for a variable prime p = (S) is exact.  Writing
u for the product of the variables outside S, the contraction of M A_p is the
monomial ideal M : u^oo, obtained by deleting the outside variables from each
generator.  (Modulo that saturation the ring is a polynomial ring in the
outside variables over a graded ring, and any g not in p has a coefficient
with nonzero constant term; by McCoy's theorem and a lowest-degree argument g
is then a non-zero-divisor.)  So f lies in the kernel iff each of its terms
lies in M : u^oo, and a monomial in the outside variables always serves as
the witness g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConsistencyError, ConstructionError
from .ring import is_prime

MAX_VARS = 6
DEFAULT_DEGREE_BOUND = 8
FRESH_NAMES = ("z", "w", "t", "u", "v", "s", "r", "q")

Monomial = tuple[int, ...]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def minimalize(monos: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop every monomial divisible by another one; sorted by degree then exponents."""
    uniq = sorted(set(monos), key=lambda m: (degree(m), tuple(-e for e in m)))
    kept: list[Monomial] = []
    for m in uniq:
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


def monomials_up_to(nvars: int, max_degree: int, allowed: Iterable[int] | None = None) -> Iterator[Monomial]:
    """All monomials of total degree <= max_degree, in increasing degree."""
    allowed = list(range(nvars)) if allowed is None else sorted(allowed)
    for d in range(max_degree + 1):
        for combo in _compositions(d, len(allowed)):
            m = [0] * nvars
            for i, e in zip(allowed, combo):
                m[i] = e
            yield tuple(m)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialQuotientRing:
    char: int
    vars: tuple[str, ...]
    gens: tuple[Monomial, ...]

    @classmethod
    def create(cls, char: int, vars: Sequence[str], monomials: Iterable[Monomial]) -> "MonomialQuotientRing":
        vars = tuple(vars)
        if not is_prime(char):
            raise ConstructionError(f"characteristic {char} is not prime")
        if len(vars) > MAX_VARS:
            raise ConstructionError(f"at most {MAX_VARS} variables are supported, got {len(vars)}")
        if len(set(vars)) != len(vars):
            raise ConstructionError("variable names must be distinct")
        monos = []
        for m in monomials:
            m = tuple(int(e) for e in m)
            if len(m) != len(vars) or any(e < 0 for e in m):
                raise ConstructionError(f"bad exponent vector {m}")
            if degree(m) == 0:
                raise ConstructionError("the monomial 1 generates the unit ideal")
            monos.append(m)
        return cls(char, vars, minimalize(monos))

    @property
    def n(self) -> int:
        return len(self.vars)

    def in_ideal(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def mono_str(self, m: Monomial) -> str:
        return mono_str(m, self.vars)

    @property
    def label(self) -> str:
        base = f"F{self.char}[{','.join(self.vars)}]"
        if not self.gens:
            return base
        return base + "/(" + ", ".join(self.mono_str(g) for g in self.gens) + ")"

    def __str__(self) -> str:
        return self.label

    def max_gen_degree(self) -> int:
        return max((degree(g) for g in self.gens), default=0)

    def saturation_bound(self) -> int:
        return max(1, self.max_gen_degree() * max(1, self.n))

    def variable(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ConstructionError(f"{name!r} is not a variable of {self.label}") from None

    def monomial(self, exps: Mapping[str, int]) -> Monomial:
        m = [0] * self.n
        for v, e in exps.items():
            m[self.variable(v)] += e
        return tuple(m)

    def poly(self, terms: Mapping[Monomial, int] | Monomial) -> "NFPoly":
        if isinstance(terms, tuple):
            terms = {terms: 1}
        return NFPoly.make(self, terms)

    def one(self) -> "NFPoly":
        return self.poly((0,) * self.n)


def mono_str(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for v, e in zip(names, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class NFPoly:
    """A residue f + M written in normal form (no term lies in M)."""

    ring: MonomialQuotientRing
    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def make(cls, ring: MonomialQuotientRing, terms: Mapping[Monomial, int]) -> "NFPoly":
        acc: dict[Monomial, int] = {}
        for m, c in terms.items():
            if len(m) != ring.n:
                raise ConstructionError(f"exponent vector {m} has the wrong length")
            if ring.in_ideal(m):
                continue
            acc[m] = (acc.get(m, 0) + c) % ring.char
        items = tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: (-degree(t[0]), t[0])))
        return cls(ring, items)

    @property
    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    def __add__(self, other: "NFPoly") -> "NFPoly":
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return NFPoly.make(self.ring, acc)

    def __neg__(self) -> "NFPoly":
        return NFPoly.make(self.ring, {m: -c for m, c in self.terms})

    def __sub__(self, other: "NFPoly") -> "NFPoly":
        return self + (-other)

    def __mul__(self, other: "NFPoly") -> "NFPoly":
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return NFPoly.make(self.ring, acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms:
            s = self.ring.mono_str(m)
            if c != 1:
                s = f"{c}" if s == "1" else f"{c}*{s}"
            out.append(s)
        return " + ".join(out)


@dataclass(frozen=True)
class VariablePrime:
    """The prime (S) + M / M for a set S of variables covering every generator."""

    ring: MonomialQuotientRing
    vars_in: frozenset[int]

    def __post_init__(self):
        for g in self.ring.gens:
            if not support(g) & self.vars_in:
                raise ConstructionError(
                    f"({', '.join(self.ring.vars[i] for i in sorted(self.vars_in))}) does not contain "
                    f"{self.ring.mono_str(g)}"
                )

    @classmethod
    def of(cls, ring: MonomialQuotientRing, names: Iterable[str]) -> "VariablePrime":
        return cls(ring, frozenset(ring.variable(v) for v in names))

    @property
    def outside(self) -> list[int]:
        return [i for i in range(self.ring.n) if i not in self.vars_in]

    def contains_monomial(self, m: Monomial) -> bool:
        return bool(support(m) & self.vars_in)

    def contains(self, f: NFPoly) -> bool:
        return all(self.contains_monomial(m) for m in f.monomials)

    def __str__(self) -> str:
        if not self.vars_in:
            return "(0)"
        return "(" + ", ".join(self.ring.vars[i] for i in sorted(self.vars_in)) + ")"


def variable_primes(ring: MonomialQuotientRing) -> list[VariablePrime]:
    """Every variable set S with (S) containing M."""
    out = []
    for k in range(ring.n + 1):
        for s in combinations(range(ring.n), k):
            s = frozenset(s)
            if all(support(g) & s for g in ring.gens):
                out.append(VariablePrime(ring, s))
    return out


def minimal_primes(ring: MonomialQuotientRing) -> list[VariablePrime]:
    """Inclusion-minimal variable covers of the generator supports."""
    covers = variable_primes(ring)
    return [p for p in covers if not any(q.vars_in < p.vars_in for q in covers)]


def is_quasi_prime(ring: MonomialQuotientRing) -> bool:
    return len(minimal_primes(ring)) == 1


def is_reduced(ring: MonomialQuotientRing) -> bool:
    squarefree = all(max(g) <= 1 for g in ring.gens)
    # a non-squarefree generator g yields m = ceil(g/2) with m not in M, m^2 in M,
    # and deg m <= deg g, so this bound is enough
    bound = ring.max_gen_degree()
    square_witness = next(
        (m for m in monomials_up_to(ring.n, bound)
         if not ring.in_ideal(m) and ring.in_ideal(mono_mul(m, m))),
        None,
    )
    if squarefree != (square_witness is None):
        raise ConsistencyError("reduced: squarefree generators vs nilpotent monomial scan", ring.label)
    return squarefree


def is_mp(ring: MonomialQuotientRing) -> bool:
    """Exactly one minimal prime.

    All variable primes lie in the maximal ideal generated by every variable,
    so two distinct minimal primes are never comaximal.
    """
    mins = minimal_primes(ring)
    for p, q in combinations(mins, 2):
        # (S1) + (S2) is generated by variables, hence proper
        if not (p.vars_in | q.vars_in) <= frozenset(range(ring.n)):
            raise ConsistencyError("variable primes are never comaximal", ring.label)
    return len(mins) == 1


def saturation(ring: MonomialQuotientRing, p: VariablePrime) -> tuple[Monomial, ...]:
    """Generators of M : u^oo, u the product of the variables outside p."""
    outside = set(p.outside)
    return minimalize(tuple(0 if i in outside else e for i, e in enumerate(g)) for g in ring.gens)


def _in_monomial_ideal(gens: Sequence[Monomial], m: Monomial) -> bool:
    return any(divides(g, m) for g in gens)


@dataclass
class KernelVerdict:
    verdict: str  # "in" | "out" | "unknown"
    witness: NFPoly | None = None
    blocking_term: Monomial | None = None
    degree_bound: int = DEFAULT_DEGREE_BOUND
    needed_degree: int | None = None


def kernel_membership(f: NFPoly, p: VariablePrime, degree_bound: int = DEFAULT_DEGREE_BOUND) -> KernelVerdict:
    """Decide whether f lies in Ker(A -> A_p), with a witness g outside p when it does."""
    if degree_bound < 0:
        raise ConstructionError("degree bound must be non-negative")
    ring = f.ring
    if p.ring != ring:
        raise ConstructionError("prime and element belong to different rings")
    sat = saturation(ring, p)
    blocking = next((m for m in f.monomials if not _in_monomial_ideal(sat, m)), None)
    outside = p.outside

    witness = None
    for w in monomials_up_to(ring.n, degree_bound, outside):
        if (f * ring.poly(w)).is_zero():
            witness = ring.poly(w)
            break

    if blocking is not None:
        if witness is not None:
            raise ConsistencyError("saturation says out but a witness exists", ring.label, str(f))
        return KernelVerdict("out", blocking_term=blocking, degree_bound=degree_bound)
    if witness is not None:
        return KernelVerdict("in", witness=witness, degree_bound=degree_bound)
    # in the kernel, but the cheapest witness u^k is beyond the bound
    needed = _witness_degree(ring, f, outside)
    return KernelVerdict("unknown", degree_bound=degree_bound, needed_degree=needed)


def _witness_degree(ring: MonomialQuotientRing, f: NFPoly, outside: list[int]) -> int:
    k = 0
    while True:
        u = tuple(k if i in outside else 0 for i in range(ring.n))
        if (f * ring.poly(u)).is_zero():
            return k * len(outside)
        k += 1


def kernel_generators(ring: MonomialQuotientRing, p: VariablePrime) -> tuple[Monomial, ...]:
    """Monomial generators of Ker pi_p (as an ideal of the quotient); () means zero."""
    return tuple(m for m in saturation(ring, p) if not ring.in_ideal(m))


def kernel_radical_vars(ring: MonomialQuotientRing, p: VariablePrime) -> frozenset[int]:
    """Variables some power of which lies in M : u^oo, i.e. generators of sqrt(Ker pi_p) + M."""
    sat = saturation(ring, p)
    return frozenset(i for g in sat if len(support(g)) == 1 for i in support(g))


@dataclass
class MonomialLessenedRadical:
    ring: MonomialQuotientRing
    nprime_gens: tuple[Monomial, ...]  # generators of N' + M, minimal
    nil_gens: tuple[Monomial, ...]  # generators of sqrt(M)

    @property
    def nprime_nonzero(self) -> list[Monomial]:
        return [m for m in self.nprime_gens if not self.ring.in_ideal(m)]

    @property
    def nprime_is_zero(self) -> bool:
        return not self.nprime_nonzero

    @property
    def nil_is_zero(self) -> bool:
        return all(self.ring.in_ideal(m) for m in self.nil_gens)

    @property
    def nprime_equals_nil(self) -> bool:
        return all(_in_monomial_ideal(self.nprime_gens, m) for m in self.nil_gens)


def lessened_radical(ring: MonomialQuotientRing) -> MonomialLessenedRadical:
    mins = minimal_primes(ring)
    if not mins:
        nprime = ((0,) * ring.n,)
    else:
        nprime = saturation(ring, mins[0])
        for p in mins[1:]:
            sat = saturation(ring, p)
            nprime = minimalize(mono_lcm(a, b) for a in nprime for b in sat)
    nil = minimalize(tuple(min(e, 1) for e in g) for g in ring.gens)
    lr = MonomialLessenedRadical(ring, tuple(nprime), nil)
    if not all(_in_monomial_ideal(nil, m) for m in lr.nprime_gens):
        raise ConsistencyError("N' lies in the nilradical", ring.label)
    return lr


@dataclass
class LessenedVerdict:
    verdict: str  # "lessened" | "not_lessened" | "unknown"
    witness: Monomial | None = None
    certificates: dict[str, KernelVerdict] = field(default_factory=dict)
    degree_bound: int = DEFAULT_DEGREE_BOUND


def is_lessened_up_to(ring: MonomialQuotientRing, degree_bound: int = DEFAULT_DEGREE_BOUND) -> LessenedVerdict:
    """Lessened iff N' = 0; a nonzero monomial of N' is certified kernel by kernel."""
    lr = lessened_radical(ring)
    if lr.nprime_is_zero:
        return LessenedVerdict("lessened", degree_bound=degree_bound)
    w = lr.nprime_nonzero[0]
    f = ring.poly(w)
    certs = {str(p): kernel_membership(f, p, degree_bound) for p in minimal_primes(ring)}
    if all(c.verdict == "in" for c in certs.values()):
        return LessenedVerdict("not_lessened", w, certs, degree_bound)
    if any(c.verdict == "out" for c in certs.values()):
        raise ConsistencyError("N' generator lies in every minimal kernel", ring.label, ring.mono_str(w))
    return LessenedVerdict("unknown", w, certs, degree_bound)


def prime_is_idempotent(p: VariablePrime) -> bool:
    """p = p^2 in the quotient, i.e. every variable of S reduces into (S^2) + M."""
    ring = p.ring
    for v in p.vars_in:
        x = tuple(1 if i == v else 0 for i in range(ring.n))
        # x is not in (S^2) for degree reasons, so it must lie in M
        if not ring.in_ideal(x):
            return False
    return True


def quotient_by_prime_square(ring: MonomialQuotientRing, p: VariablePrime) -> MonomialQuotientRing:
    squares = []
    for a in p.vars_in:
        for b in p.vars_in:
            m = [0] * ring.n
            m[a] += 1
            m[b] += 1
            squares.append(tuple(m))
    return MonomialQuotientRing.create(ring.char, ring.vars, list(ring.gens) + squares)


def adjoin_variable(ring: MonomialQuotientRing, name: str | None = None) -> MonomialQuotientRing:
    """A[z]: same generators, one fresh variable."""
    if ring.n >= MAX_VARS:
        raise ConstructionError(f"variable budget of {MAX_VARS} exceeded")
    if name is None:
        name = next(v for v in FRESH_NAMES if v not in ring.vars)
    if name in ring.vars:
        raise ConstructionError(f"variable {name!r} already present")
    new = MonomialQuotientRing.create(ring.char, ring.vars + (name,), [g + (0,) for g in ring.gens])
    if is_mp(new) != is_mp(ring):
        raise ConsistencyError("A mp iff A[x] mp", ring.label)
    old_mins = sorted(sorted(p.vars_in) for p in minimal_primes(ring))
    new_mins = sorted(sorted(p.vars_in) for p in minimal_primes(new))
    if old_mins != new_mins:
        raise ConsistencyError("minimal primes of A[x] are the p[x]", ring.label)
    return new

