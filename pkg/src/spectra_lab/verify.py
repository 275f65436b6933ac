"""Theorem-checking suites run over corpora.

Each suite maps a corpus member to ``None`` (pass) or a description of the
counterwitness.  A :class:`ConsistencyError` raised while checking a member
counts as a failure of that member, never as a crash of the suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .corpus import Subject, load_corpus
from .decompose import decompose_fields, decompose_lessened_quasi_prime, decompose_local
from .errors import ConsistencyError
from .ideals import (
    enumerate_ideals, is_pure, is_regular_ideal, maximal_ideals, radical, star,
)
from .monomial import (
    MonomialQuotientRing, VariablePrime, adjoin_variable, is_lessened_up_to, is_mp, is_reduced,
    kernel_generators, kernel_membership, kernel_radical_vars, lessened_radical, minimal_primes as mono_minimal_primes,
    monomials_up_to, prime_is_idempotent, quotient_by_prime_square, variable_primes,
)
from .poset import (
    FLAT, ZARISKI, Retraction, clopen_sets, component_unions, flat_continuous_retractions,
    max_retraction_poset, min_retraction_poset, prime_inverse, shape_flags, spec_poset_of_ring,
)
from .ring import is_isomorphic, make_product, make_quotient
from .spectrum import (
    classify, kernel_of_localization, lessened_radical as ring_lessened_radical, localize, maximal_primes, minimal_primes, primes,
)

Check = Callable[[Subject], "str | None"]


@dataclass
class SuiteResult:
    suite: str
    corpus: str
    passed: int = 0
    failed: int = 0
    first_failure: dict | None = None
    seconds: float = 0.0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def as_dict(self) -> dict:
        return {
            "suite": self.suite, "corpus": self.corpus, "passed": self.passed,
            "failed": self.failed, "skipped": self.skipped, "ok": self.ok,
            "first_failure": self.first_failure,
        }


@dataclass
class Suite:
    name: str
    claim: str
    default_corpus: str
    check: Check
    kinds: tuple[str, ...] = ("ring",)
    max_size: int | None = None
    notes: list[str] = field(default_factory=list)


# -- ring suites ----------------------------------------------------------------


def _zero_dim(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    zd = rep.flags["zero_dimensional"]
    if not zd.value or not all(zd.criteria.values()):
        return f"zero-dimensional criteria {zd.criteria}"
    if not rep["pi_regular"]:
        return "pi-regular scan failed"
    for p in primes(ring):
        loc = localize(p)  # asserts locality
        if not classify(loc)["local"]:
            return f"localization at {p.underlying} not local"
        if not is_pure(kernel_of_localization(p).kernel):
            return f"Ker pi_{p.underlying} not pure"
    poset = spec_poset_of_ring(ring)
    shapes = shape_flags(poset)
    if not shapes["zero_dim_shape"]:
        return "spectrum is not an antichain"
    for shape, flag in (("mp_shape", "mp"), ("gelfand_shape", "gelfand"), ("zero_dim_shape", "zero_dimensional")):
        if shapes[shape] != rep[flag]:
            return f"{shape}={shapes[shape]} but {flag}={rep[flag]}"
    return None


def _mp(s: Subject) -> str | None:
    ring = s.value
    flag = classify(ring).flags["mp"]
    verdicts = {"definition": flag.value, **flag.criteria}
    if len(set(verdicts.values())) != 1:
        return f"mp criteria disagree: {verdicts}"
    for p in primes(ring):
        kd = kernel_of_localization(p)
        if not kd.kernel_radical.members <= p.members:
            return f"sqrt Ker pi_{p.underlying} not inside the prime"
        if (kd.kernel_radical.members == p.members) != p.is_minimal:
            return f"sqrt Ker pi_{p.underlying} = p iff minimal fails"
    inter = frozenset(range(ring.n))
    for m in maximal_primes(ring):
        inter &= kernel_of_localization(m).kernel.members
    if inter != {ring.zero}:
        return "intersection of Ker pi_m over Max is not zero"
    return None


def _gelfand(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    flag = rep.flags["gelfand"]
    verdicts = {"definition": flag.value, **flag.criteria}
    if len(set(verdicts.values())) != 1:
        return f"gelfand criteria disagree: {verdicts}"
    if not rep["clean"]:
        return "gelfand with zero-dimensional A/J but not clean"
    maxs = maximal_primes(ring)
    one = ring.one
    for f in range(ring.n):
        v_f = {m for m in maxs if f in m.members}
        if not any(
            {m for m in maxs if ring.add[one, ring.neg[ring.mul[f, g]]] not in m.members} == v_f
            for g in range(ring.n)
        ):
            return f"no g with Max cap V({ring.name(f)}) = Max cap D(1 - {ring.name(f)} g)"
    return None


def _lessened_product(s: Subject) -> str | None:
    ring = s.value
    if ring.components is None:
        return None
    factors = ring.components
    if classify(ring)["lessened"] != all(classify(f)["lessened"] for f in factors):
        return "lessened(product) differs from the conjunction over factors"
    expected = []
    for k, f in enumerate(factors):
        proj = ring.projection(k)
        for q in primes(f):
            pre = frozenset(int(x) for x in range(ring.n) if proj[x] in q.members)
            ker_q = kernel_of_localization(q).kernel.members
            ker_pre = frozenset(int(x) for x in range(ring.n) if proj[x] in ker_q)
            expected.append((pre, ker_pre, q.is_minimal))
    got = {p.members: p for p in primes(ring)}
    if len(got) != len(expected) or set(got) != {e[0] for e in expected}:
        return "primes of the product are not exactly the factor preimages"
    for pre, ker_pre, minimal in expected:
        p = got[pre]
        if p.is_minimal != minimal:
            return f"{p.underlying}: minimality not inherited from the factor"
        if kernel_of_localization(p).kernel.members != ker_pre:
            return f"Ker pi_{p.underlying} differs from the preimage of the factor kernel"
    return None


def _nprime(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    nprime = ring_lessened_radical(ring).nprime
    if bool(is_pure(nprime)) != rep["lessened"]:
        return "lessened differs from N' pure"
    if not classify(make_quotient(ring, nprime))["lessened"]:
        return "A/N' is not lessened"
    if rep["locally_lessened"] and not rep["lessened"]:
        return "locally lessened but not lessened"
    for p in minimal_primes(ring):
        q = make_quotient(ring, kernel_of_localization(p).kernel)
        qr = classify(q)
        if not (qr["lessened"] and qr["quasi_prime"]):
            return f"A/Ker pi_{p.underlying} not lessened quasi-prime"
    return None


def _ll_mp(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    i = rep["locally_lessened"] and rep["mp"]
    ii = all(is_pure(kernel_of_localization(p).kernel) for p in minimal_primes(ring))
    ps = primes(ring)
    iii = all(
        kernel_of_localization(p).kernel == kernel_of_localization(q).kernel
        for p in ps for q in ps if p.members <= q.members
    )
    if not (i == ii == iii):
        return f"(i)={i} (ii)={ii} (iii)={iii}"
    return None


def _purified_regular(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    kernels = [kernel_of_localization(p).kernel for p in primes(ring)]
    if all(is_regular_ideal(k) for k in kernels) and not (rep["locally_lessened"] and rep["purified"]):
        return "regular kernels but not locally lessened purified"
    ideals = enumerate_ideals(ring)
    pure = [i for i in ideals if is_pure(i)]
    for i in ideals:
        if is_regular_ideal(i) and i not in pure:
            return f"regular ideal {i} is not pure"
    for a, b in combinations(pure, 2):
        if radical(a) == radical(b):
            return f"pure ideals {a} and {b} share a radical"
    return None


def _star(s: Subject) -> str | None:
    ring = s.value
    maxs = set(maximal_ideals(ring))
    for i in enumerate_ideals(ring):
        r = radical(i)
        if not (i.members <= r.members and radical(r) == r):
            return f"radical laws fail at {i}"
        if i.is_whole():
            continue
        st = star(i)
        if (st.members == i.members) != (i in maxs):
            return f"star({i}) = {i} iff maximal fails"
        if st.is_ideal != classify(make_quotient(ring, i))["local"]:
            return f"star({i}) ideal iff A/I local fails"
    return None


def _decompositions(s: Subject) -> str | None:
    ring = s.value
    rep = classify(ring)
    dec = decompose_local(ring)
    if len(dec.factors) != len(maximal_primes(ring)):
        return "factor count differs from |Max|"
    if not all(classify(f)["local"] for f in dec.factors):
        return "non-local factor"
    rebuilt = make_product(dec.factors) if dec.factors else dec.product  # zero ring: empty product
    if not is_isomorphic(rebuilt, ring):
        return "product of factors not isomorphic to the ring"
    lqp = decompose_lessened_quasi_prime(ring)
    if sorted(k.members for k in lqp.kernels) != sorted(k.members for k in dec.kernels):
        return "local and lessened quasi-prime decompositions differ"
    fields = decompose_fields(ring)
    if fields.refused == rep["reduced"]:
        return "decompose_fields disagrees with the reduced flag"
    return None


# -- poset suites ----------------------------------------------------------------


def _poset_duality(s: Subject) -> str | None:
    p = s.value
    d = prime_inverse(p)
    f, g = shape_flags(p), shape_flags(d)
    if f["gelfand_shape"] != g["mp_shape"] or f["mp_shape"] != g["gelfand_shape"]:
        return "gelfand/mp shapes not swapped by duality"
    if f["clean_shape"] != g["purified_shape"] or f["purified_shape"] != g["clean_shape"]:
        return "clean/purified shapes not swapped by duality"
    z, fl, cu = clopen_sets(p, ZARISKI), clopen_sets(p, FLAT), component_unions(p)
    if not (z == fl == cu):
        return "Zariski clopens, flat clopens and component unions differ"
    return None


def _retraction(s: Subject) -> str | None:
    p = s.value
    flags = shape_flags(p)
    r = min_retraction_poset(p)
    if isinstance(r, Retraction) != flags["mp_shape"]:
        return "min retraction exists iff mp shape fails"
    if isinstance(r, Retraction):
        if flat_continuous_retractions(p) != [r.mapping]:
            return "flat-continuous retraction onto Min is not unique"
        if not r.zariski_continuous:
            return "min retraction not Zariski-continuous"
    m = max_retraction_poset(p)
    if isinstance(m, Retraction) != flags["gelfand_shape"]:
        return "max retraction exists iff gelfand shape fails"
    return None


# -- monomial suite ----------------------------------------------------------------


def _poly(ring: MonomialQuotientRing, **exps: int):
    return ring.poly(ring.monomial(exps))


def monomial_example_checks() -> list[tuple[str, bool]]:
    """The fixed example verdicts: (claim, holds)."""
    out = []
    r = MonomialQuotientRing.create(2, ("x", "y"), [(3, 0), (2, 1)])
    p = VariablePrime.of(r, ["x"])
    out.append(("F2[x,y]/(x^3, x^2*y): minimal primes are (x)", [str(q) for q in mono_minimal_primes(r)] == ["(x)"]))
    out.append(("x^2 in Ker pi_(x)", kernel_membership(_poly(r, x=2), p).verdict == "in"))
    out.append(("x not in Ker pi_(x)", kernel_membership(_poly(r, x=1), p).verdict == "out"))
    lr = lessened_radical(r)
    out.append(("0 < N' < N strictly", not lr.nprime_is_zero and not lr.nprime_equals_nil))
    s = MonomialQuotientRing.create(2, ("x", "y"), [(2, 0), (1, 1)])
    v = is_lessened_up_to(s)
    out.append(("F2[x,y]/(x^2, x*y) not lessened, witness x", v.verdict == "not_lessened" and v.witness == (1, 0)))
    t = MonomialQuotientRing.create(2, ("x", "y"), [(1, 1)])
    q = quotient_by_prime_square(t, VariablePrime.of(t, ["x"]))
    out.append(("F2[x,y]/(x*y) reduced with non-idempotent minimal prime (x)",
                is_reduced(t) and not prime_is_idempotent(VariablePrime.of(t, ["x"]))))
    out.append(("quotient by (x)^2 is not lessened", is_lessened_up_to(q).verdict == "not_lessened"))
    return out


def _monomial(s: Subject) -> str | None:
    ring = s.value
    squarefree = all(max(g) <= 1 for g in ring.gens)
    if is_reduced(ring) != squarefree:
        return "reduced differs from squarefree generators"
    mins = mono_minimal_primes(ring)
    for p in mins:
        kr = kernel_radical_vars(ring, p)
        for m in kernel_generators(ring, p):
            if not p.contains_monomial(m):
                return f"Ker pi_{p} not inside {p}"
        if not kr <= p.vars_in:
            return f"sqrt Ker pi_{p} not inside {p}"
        if is_reduced(ring) and not prime_is_idempotent(p):
            if is_lessened_up_to(quotient_by_prime_square(ring, p)).verdict != "not_lessened":
                return f"quotient by {p}^2 is not certified non-lessened"
    if ring.n < 6:
        bigger = adjoin_variable(ring)
        if is_mp(bigger) != is_mp(ring) or len(mono_minimal_primes(bigger)) != len(mins):
            return "adjoining a variable changed mp or the minimal primes"
    bound = ring.max_gen_degree()
    covers = variable_primes(ring)
    for p in covers:
        for q in covers:
            if p.vars_in < q.vars_in:
                for m in monomials_up_to(ring.n, bound):
                    if ring.in_ideal(m):
                        continue
                    f = ring.poly(m)
                    if kernel_membership(f, q).verdict == "in" and kernel_membership(f, p).verdict != "in":
                        return f"{ring.mono_str(m)} in Ker pi_{q} but not Ker pi_{p}"
    return None


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("zero-dim-criteria", "finite rings are zero-dimensional by all three criteria", "standard", _zero_dim),
        Suite("mp-equivalences", "the mp criteria agree; sqrt Ker pi_p = p iff p minimal", "standard", _mp),
        Suite("gelfand-criteria", "the Gelfand criteria agree; Gelfand rings here are clean", "standard", _gelfand),
        Suite("lessened-product", "lessened products and the product kernel formula",
              "products:depth2+products:depth3", _lessened_product),
        Suite("nprime-quotient", "A/N' lessened; lessened iff N' pure; A/Ker pi_p lessened quasi-prime",
              "standard", _nprime),
        Suite("locally-lessened-mp", "three-way locally lessened mp equivalence", "standard", _ll_mp),
        Suite("purified-regular", "regular kernels give locally lessened purified; pure ideal lemmas",
              "standard", _purified_regular, max_size=64),
        Suite("star-lemmas", "star(I) = I iff maximal; star(I) ideal iff A/I local", "standard", _star,
              max_size=64),
        Suite("decompositions", "CRT decompositions round-trip", "standard", _decompositions),
        Suite("poset-duality", "order duality swaps mp/gelfand and purified/clean shapes", "posets:6",
              _poset_duality, kinds=("poset",)),
        Suite("retraction-uniqueness", "unique flat-continuous retraction onto Min", "posets:6", _retraction,
              kinds=("poset",)),
        Suite("monomial-examples", "monomial example verdicts and invariants", "monomial", _monomial,
              kinds=("monomial",)),
    ]
}


def run_suite(name: str, corpus: str | None = None, subjects: list[Subject] | None = None,
              max_size: int | None = None) -> SuiteResult:
    suite = SUITES[name]
    corpus = corpus or suite.default_corpus
    subjects = load_corpus(corpus) if subjects is None else subjects
    limit = max_size if max_size is not None else suite.max_size
    res = SuiteResult(name, corpus)
    start = time.perf_counter()
    if name == "monomial-examples":
        for claim, holds in monomial_example_checks():
            if holds:
                res.passed += 1
            else:
                res.failed += 1
                res.first_failure = res.first_failure or {"subject": "example", "detail": claim}
    for s in subjects:
        if s.kind not in suite.kinds or (limit is not None and s.kind == "ring" and s.value.n > limit):
            res.skipped += 1
            continue
        try:
            detail = suite.check(s)
        except ConsistencyError as exc:
            detail = str(exc)
        if detail is None:
            res.passed += 1
        else:
            res.failed += 1
            if res.first_failure is None:
                res.first_failure = {"subject": s.expr, "detail": detail}
    res.seconds = time.perf_counter() - start
    return res
