"""Acceptance criteria 1-8, each timed against its budget.

Every criterion prints one ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import pytest

from spectra_lab import corpus as corpus_mod
from spectra_lab.corpus import load_corpus
from spectra_lab.decompose import decompose_local
from spectra_lab.errors import ConsistencyError
from spectra_lab.ideals import enumerate_ideals, is_pure, radical
from spectra_lab.monomial import (
    MonomialQuotientRing, VariablePrime, is_lessened_up_to, is_reduced, kernel_membership, lessened_radical,
)
from spectra_lab.ring import make_zmod
from spectra_lab.spectrum import (
    classify, localization_is_surjective, localize, primes,
)
from spectra_lab.verify import run_suite

GOLDEN = Path(__file__).parent / "golden"
BUDGETS = {1: 5, 2: 120, 3: 120, 4: 120, 5: 180, 6: 300, 7: 60, 8: 30}


def cold_corpus(spec: str):
    """Build the corpus from scratch so per-ring caches start empty."""
    corpus_mod._zmod.cache_clear()
    return load_corpus(spec)


# -- criteria ----------------------------------------------------------------------


def criterion_1() -> str | None:
    z4 = classify(make_zmod(4))
    if not (z4["lessened"] and not z4["reduced"]):
        return "Z/4 should be lessened and not reduced"
    bad = [n for n in range(1, 101) if not classify(make_zmod(n))["lessened"]]
    if bad:
        return f"Z/n not lessened for n in {bad}"
    r = MonomialQuotientRing.create(2, ("x", "y"), [(2, 0), (1, 1)])
    v = is_lessened_up_to(r)
    if v.verdict != "not_lessened" or v.witness != (1, 0):
        return f"F2[x,y]/(x^2,xy): {v.verdict} witness {v.witness}"
    c = MonomialQuotientRing.create(2, ("x", "y"), [(3, 0), (2, 1)])
    p = VariablePrime.of(c, ["x"])
    if kernel_membership(c.poly((2, 0)), p).verdict != "in":
        return "x^2 should lie in Ker pi_(x)"
    if kernel_membership(c.poly((1, 0)), p).verdict != "out":
        return "x should not lie in Ker pi_(x)"
    lr = lessened_radical(c)
    if lr.nprime_is_zero or lr.nprime_equals_nil or is_reduced(c):
        return "0 < N' < N should be strict"
    return None


def criterion_2() -> str | None:
    for s in cold_corpus("standard"):
        flag = classify(s.value).flags["mp"]
        verdicts = {"definition": flag.value, **flag.criteria}
        if len(verdicts) != 5:
            return f"{s.expr}: expected five mp criteria, got {sorted(verdicts)}"
        if len(set(verdicts.values())) != 1:
            return f"{s.expr}: {verdicts}"
    return None


def criterion_3() -> str | None:
    for s in cold_corpus("standard"):
        ring = s.value
        zd = classify(ring).flags["zero_dimensional"]
        if not (zd.value and zd.criteria["pi_regular"] and zd.criteria["surjective_localization"]
                and zd.criteria["max_is_radical_of_unique_pure"]):
            return f"{s.expr}: {zd.criteria}"
        for p in primes(ring):
            localize(p)  # raises ConsistencyError if the quotient is not local
            if not localization_is_surjective(p):
                return f"{s.expr}: localization at {p.underlying} not surjective"
    return None


def criterion_4() -> str | None:
    res = run_suite("lessened-product", subjects=cold_corpus("products:depth2+products:depth3"))
    if not res.ok:
        return str(res.first_failure)
    if res.passed != 36 + 120:
        return f"expected 156 products, checked {res.passed}"
    return None


def criterion_5() -> str | None:
    res = run_suite("decompositions", subjects=cold_corpus("standard"))
    if not res.ok:
        return str(res.first_failure)
    dec = decompose_local(make_zmod(12))
    if dec.canonical != ["Z/4", "Z/3"]:
        return f"Z/12 decomposed as {dec.canonical}"
    return None


def criterion_6() -> str | None:
    subjects = [s for s in cold_corpus("standard") if s.value.n <= 64]
    for suite in ("star-lemmas", "purified-regular", "nprime-quotient", "locally-lessened-mp"):
        res = run_suite(suite, subjects=subjects, max_size=64)
        if not res.ok:
            return f"{suite}: {res.first_failure}"
    # pure + equal radicals => equal, stated directly once more over all pure pairs
    for s in subjects:
        pure = [i for i in enumerate_ideals(s.value) if is_pure(i)]
        rads = [radical(i).members for i in pure]
        if len(set(rads)) != len(rads):
            return f"{s.expr}: distinct pure ideals share a radical"
    return None


def criterion_7() -> str | None:
    posets = cold_corpus("posets:6")
    if len(posets) != 1 + 2 + 5 + 16 + 63 + 318:
        return f"expected 405 posets, got {len(posets)}"
    for suite in ("poset-duality", "retraction-uniqueness"):
        res = run_suite(suite, subjects=posets)
        if not res.ok:
            return f"{suite}: {res.first_failure}"
    return None


def criterion_8() -> str | None:
    import contextlib
    import io

    from spectra_lab.cli import main

    def cli(*argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
            code = main(list(argv))
        return code, buf.getvalue()

    goldens = {
        "classify_Z12": ["classify", "Z/12"],
        "decompose_Z12": ["decompose", "Z/12"],
        "kernel_x_F2xy": ["kernel", "--at=x", "F2[x,y]/(x^3,x^2*y)"],
    }
    for name, argv in goldens.items():
        for fmt, extra in (("txt", []), ("json", ["--json"])):
            code, out = cli(*argv, *extra)
            if code != 0 or out != (GOLDEN / f"{name}.{fmt}").read_text(encoding="utf-8"):
                return f"golden mismatch: {name}.{fmt}"
    code, out = cli("search", "!lessened", "--corpus=zmod:2..100", "--json")
    body = json.loads(out)["body"]
    if code != 0 or not body["exhausted"] or body["examined"] != 99:
        return f"search did not report exhaustion: {body}"
    contract = [
        (("classify", "Z/12"), 0),
        (("classify", "Z/4 x"), 1),
        (("decompose", "--kind=fields", "Z/4"), 2),
        (("kernel", "--at=x", "--element=x", "F2[x,y]/(x*y^9)"), 3),
    ]
    for argv, want in contract:
        code, _ = cli(*argv)
        if code != want:
            return f"{' '.join(argv)} exited {code}, expected {want}"
    return None


CRITERIA = {
    1: ("worked-example regressions", criterion_1),
    2: ("mp criteria agree on the corpus", criterion_2),
    3: ("zero-dimensional criteria and locality", criterion_3),
    4: ("lessened products and product kernel formula", criterion_4),
    5: ("decomposition round trips", criterion_5),
    6: ("ideal-theory lemmas on rings <= 64 elements", criterion_6),
    7: ("poset suite up to 6 points", criterion_7),
    8: ("CLI end to end", criterion_8),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        detail = fn()
    except ConsistencyError as exc:
        detail = str(exc)
    elapsed = time.perf_counter() - start
    budget = BUDGETS[number]
    if detail is None and elapsed >= budget:
        detail = f"took {elapsed:.1f}s, budget {budget}s"
    ok = detail is None
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {budget}s)"
    if not ok:
        line += f" -- {detail}"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
