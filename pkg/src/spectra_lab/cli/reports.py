"""Report objects for each command, with JSON and aligned-text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from ..corpus import Subject, load_corpus
from ..decompose import DECOMPOSERS, Refusal
from ..errors import ConstructionError
from ..ideals import ideal_from_generators, maximal_ideals, nilradical, star
from ..monomial import (
    DEFAULT_DEGREE_BOUND, MonomialQuotientRing, VariablePrime, is_lessened_up_to, is_mp, is_quasi_prime,
    is_reduced, kernel_generators, kernel_membership, kernel_radical_vars, lessened_radical,
    minimal_primes as mono_minimal_primes,
)
from ..poset import (
    Retraction, SpecPoset, clopen_sets, max_retraction_poset, min_retraction_poset, prime_inverse,
    shape_flags, spec_poset_of_ring, ZARISKI, SHAPE_FLAGS,
)
from ..ring import TableRing
from ..spectrum import FLAG_NAMES, classify, kernel_of_localization, maximal_primes, minimal_primes, primes
from ..verify import SUITES, run_suite
from .predicate import evaluate, flag_names, parse_predicate

OK, ERROR, REFUSAL, UNKNOWN, FAIL = "ok", "error", "refusal", "unknown", "fail"
EXIT_CODES = {OK: 0, ERROR: 1, FAIL: 1, REFUSAL: 2, UNKNOWN: 3}
MONOMIAL_FLAGS = ("quasi_prime", "reduced", "mp", "lessened")
CHECK, CROSS = "✓", "✗"


@dataclass
class Report:
    subject: str
    kind: str
    body: dict
    witnesses: list[dict] = field(default_factory=list)
    status: str = OK
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def claim(self, claim: str, value, witness=None) -> None:
        self.witnesses.append({"claim": claim, "value": value, "witness": witness})

    def as_dict(self) -> dict:
        return {
            "subject": self.subject, "kind": self.kind, "status": self.status,
            "body": self.body, "witnesses": self.witnesses, "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def schema() -> dict:
    return json.loads(resources.files("spectra_lab").joinpath("schema/report.schema.json").read_text("utf-8"))


def boolean_paths(body: Any, prefix: str = "") -> list[str]:
    """Dotted paths of every boolean leaf in a report body."""
    if isinstance(body, bool):
        return [prefix]
    if isinstance(body, dict):
        return [p for k, v in body.items() for p in boolean_paths(v, f"{prefix}.{k}" if prefix else str(k))]
    if isinstance(body, list):
        return [p for i, v in enumerate(body) for p in boolean_paths(v, f"{prefix}[{i}]")]
    return []


def uncovered_claims(report: Report) -> list[str]:
    claimed = {w["claim"] for w in report.witnesses}
    return [p for p in boolean_paths(report.body) if p not in claimed]


# -- helpers --------------------------------------------------------------------


def _ideal_names(ring: TableRing, ideals) -> list[str]:
    return [str(i.underlying if hasattr(i, "underlying") else i) for i in ideals]


def _find_prime(ring: TableRing, spec: str):
    """Resolve ``--at`` text: one element literal, or a parenthesized generator list."""
    text = spec.strip()
    candidates = []
    try:
        candidates.append([ring.index(text)])
    except ConstructionError:
        pass
    inner = text[1:-1] if text.startswith("(") and text.endswith(")") else text
    try:
        candidates.append([ring.index(g) for g in _split_top(inner)])
    except ConstructionError:
        pass
    for gens in candidates:
        members = ideal_from_generators(ring, gens).members
        for p in primes(ring):
            if p.members == members:
                return p
    raise ConstructionError(f"{spec!r} does not name a prime ideal of {ring.label}")


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for c in text:
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        if c == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += c
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _mono_prime(ring: MonomialQuotientRing, spec: str) -> VariablePrime:
    text = spec.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    names = [] if text.strip() in ("", "0") else _split_top(text)
    return VariablePrime.of(ring, names)


def _parse_poly(ring: MonomialQuotientRing, text: str):
    """``x^2 + 3*x*y - y`` in the given ring."""
    from .dsl import DSLSyntaxError

    terms: dict[tuple[int, ...], int] = {}
    src = text.replace(" ", "").replace("-", "+-")
    for raw in src.split("+"):
        if not raw:
            continue
        sign = -1 if raw.startswith("-") else 1
        raw = raw.lstrip("-")
        coeff = 1
        exps = [0] * ring.n
        for factor in raw.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            var, _, e = factor.partition("^")
            if var not in ring.vars or (e and not e.isdigit()):
                raise DSLSyntaxError(f"bad term {raw!r}", text.find(raw.split("*")[0]), text)
            exps[ring.vars.index(var)] += int(e) if e else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coeff
    return ring.poly(terms)


# -- classify ---------------------------------------------------------------------


def classify_report(subject: str, value, degree_bound: int = DEFAULT_DEGREE_BOUND) -> Report:
    if isinstance(value, TableRing):
        return _classify_table(subject, value)
    if isinstance(value, MonomialQuotientRing):
        return _classify_monomial(subject, value, degree_bound)
    return _poset_report(subject, value, kind="classify")


def _classify_table(subject: str, ring: TableRing) -> Report:
    rep = classify(ring)
    body = {
        "ring": ring.label,
        "size": ring.n,
        "maximal_ideals": _ideal_names(ring, maximal_primes(ring)),
        "minimal_primes": _ideal_names(ring, minimal_primes(ring)),
        "nilradical": str(nilradical(ring)),
        "flags": {name: rep[name] for name in FLAG_NAMES},
        "checks": list(rep.checks),
    }
    report = Report(subject, "classify", body)
    for name in FLAG_NAMES:
        flag = rep.flags[name]
        report.claim(f"flags.{name}", flag.value, {"witness": flag.witness, "criteria": flag.criteria})
    return report


def _classify_monomial(subject: str, ring: MonomialQuotientRing, degree_bound: int) -> Report:
    lr = lessened_radical(ring)
    verdict = is_lessened_up_to(ring, degree_bound)
    mins = mono_minimal_primes(ring)
    flags = {
        "quasi_prime": is_quasi_prime(ring),
        "reduced": is_reduced(ring),
        "mp": is_mp(ring),
        "lessened": None if verdict.verdict == "unknown" else verdict.verdict == "lessened",
    }
    body = {
        "ring": ring.label,
        "minimal_primes": [str(p) for p in mins],
        "nprime": [ring.mono_str(m) for m in lr.nprime_nonzero] or ["0"],
        "nilradical": [ring.mono_str(m) for m in lr.nil_gens if not ring.in_ideal(m)] or ["0"],
        "chain": {"nprime_nonzero": not lr.nprime_is_zero, "nprime_below_nilradical": not lr.nprime_equals_nil},
        "flags": flags,
        "degree_bound": degree_bound,
    }
    report = Report(subject, "classify", body)
    report.claim("flags.quasi_prime", flags["quasi_prime"], {"minimal_primes": body["minimal_primes"]})
    report.claim("flags.reduced", flags["reduced"],
                 {"generators": [ring.mono_str(g) for g in ring.gens if max(g) > 1] or "all squarefree"})
    report.claim("flags.mp", flags["mp"], {"minimal_primes": body["minimal_primes"]})
    certs = {p: _kernel_cert(ring, c) for p, c in verdict.certificates.items()}
    w = ring.mono_str(verdict.witness) if verdict.witness is not None else None
    report.claim("flags.lessened", flags["lessened"], {"element": w, "kernels": certs} if w else "N' = 0")
    report.claim("chain.nprime_nonzero", body["chain"]["nprime_nonzero"], {"nprime": body["nprime"]})
    report.claim("chain.nprime_below_nilradical", body["chain"]["nprime_below_nilradical"],
                 {"nilradical": body["nilradical"]})
    if flags["lessened"] is None:
        report.status = UNKNOWN
        report.notes.append(f"lessened undecided within degree bound {degree_bound}")
    return report


def _kernel_cert(ring: MonomialQuotientRing, c) -> dict:
    out: dict[str, Any] = {"verdict": c.verdict, "degree_bound": c.degree_bound}
    if c.witness is not None:
        out["witness"] = str(c.witness)
    if c.blocking_term is not None:
        out["blocking_term"] = ring.mono_str(c.blocking_term)
    if c.needed_degree is not None:
        out["needed_degree"] = c.needed_degree
    return out


# -- decompose ---------------------------------------------------------------------


def decompose_report(subject: str, ring, kind: str) -> Report:
    if not isinstance(ring, TableRing):
        raise ConstructionError("decompose needs a finite table ring")
    if kind not in DECOMPOSERS:
        raise ConstructionError(f"unknown decomposition kind {kind!r}")
    result = DECOMPOSERS[kind](ring)
    if isinstance(result, Refusal):
        body = {"kind": kind, "ring": ring.label, "decomposed": False, "reason": result.reason}
        report = Report(subject, "decompose", body, status=REFUSAL)
        report.claim("decomposed", False, result.witness)
        return report
    factors = [
        {"factor": f.label, "canonical": c, "kernel": str(k), "idempotent_generator": g, "size": f.n}
        for f, c, k, g in zip(result.factors, result.canonical, result.kernels,
                              result.generators or [None] * len(result.factors))
    ]
    body = {"kind": kind, "ring": ring.label, "decomposed": True, "factors": factors,
            "product": " x ".join(f["canonical"] or f["factor"] for f in factors) or "0"}
    report = Report(subject, "decompose", body)
    iso = {ring.name(x): result.product.name(y) for x, y in enumerate(result.iso_witness)}
    report.claim("decomposed", True, {"crt_map": iso})
    return report


# -- kernel -------------------------------------------------------------------------


def kernel_report(subject: str, value, at: str, elements: list[str], degree_bound: int) -> Report:
    if isinstance(value, MonomialQuotientRing):
        return _kernel_monomial(subject, value, at, elements, degree_bound)
    if isinstance(value, TableRing):
        return _kernel_table(subject, value, at, elements)
    raise ConstructionError("kernel needs a ring")


def _kernel_monomial(subject, ring: MonomialQuotientRing, at, elements, degree_bound) -> Report:
    p = _mono_prime(ring, at)
    mins = {q.vars_in for q in mono_minimal_primes(ring)}
    gens = kernel_generators(ring, p)
    rad = kernel_radical_vars(ring, p)
    tests = [ring.mono_str(tuple(int(i == v) for i in range(ring.n))) for v in sorted(p.vars_in)]
    for t in [ring.mono_str(g) for g in gens] + list(elements):
        if t not in tests:
            tests.append(t)
    membership = []
    status = OK
    needed = 0
    for text in tests:
        f = _parse_poly(ring, text)
        c = kernel_membership(f, p, degree_bound)
        entry = {"element": str(f), **_kernel_cert(ring, c)}
        membership.append(entry)
        if c.verdict == "unknown":
            status = UNKNOWN
            needed = max(needed, c.needed_degree or 0)
    body = {
        "ring": ring.label,
        "prime": str(p),
        "is_minimal": p.vars_in in mins,
        "kernel": "(" + ", ".join(ring.mono_str(g) for g in gens) + ")" if gens else "(0)",
        "kernel_radical_mod_ideal": "(" + ", ".join(ring.vars[i] for i in sorted(rad)) + ")" if rad else "(0)",
        "membership": membership,
        "degree_bound": degree_bound,
    }
    report = Report(subject, "kernel", body, status=status)
    report.claim("is_minimal", body["is_minimal"], {"minimal_primes": [str(q) for q in mono_minimal_primes(ring)]})
    if status == UNKNOWN:
        report.notes.append(f"some verdicts are unknown: no witness up to degree bound {degree_bound}"
                            f" (a witness of degree {needed} exists; raise --degree-bound)")
    return report


def _kernel_table(subject, ring: TableRing, at, elements) -> Report:
    p = _find_prime(ring, at)
    kd = kernel_of_localization(p)
    membership = []
    for text in elements:
        x = ring.index(text)
        g = next((g for g in range(ring.n) if g not in p.members and ring.mul[x, g] == ring.zero), None)
        membership.append({"element": ring.name(x), "verdict": "in" if g is not None else "out",
                           "witness": ring.name(g) if g is not None else None})
    body = {
        "ring": ring.label,
        "prime": str(p.underlying),
        "is_minimal": p.is_minimal,
        "kernel": str(kd.kernel),
        "kernel_members": kd.kernel.names(),
        "kernel_radical": str(kd.kernel_radical),
        "membership": membership,
    }
    report = Report(subject, "kernel", body)
    report.claim("is_minimal", p.is_minimal, {"minimal_primes": _ideal_names(ring, minimal_primes(ring))})
    return report


# -- star ----------------------------------------------------------------------------


def star_report(subject: str, ring, ideal_text: str) -> Report:
    if not isinstance(ring, TableRing):
        raise ConstructionError("star needs a finite table ring")
    text = ideal_text.strip()
    inner = text[1:-1] if text.startswith("(") and text.endswith(")") and not _is_element(ring, text) else text
    gens = [ring.index(g) for g in _split_top(inner)] if not _is_element(ring, text) else [ring.index(text)]
    ideal = ideal_from_generators(ring, gens)
    st = star(ideal)
    over = [str(m) for m in maximal_ideals(ring) if ideal.members <= m.members]
    body = {
        "ring": ring.label,
        "ideal": str(ideal),
        "star": st.names(),
        "star_is_ideal": st.is_ideal,
        "star_equals_ideal": st.members == ideal.members,
        "maximal_ideals_over": over,
    }
    report = Report(subject, "star", body)
    if st.is_ideal:
        w: Any = {"unique_maximal_over": over}
    else:
        pair = next(((f, g) for f in sorted(st.members) for g in sorted(st.members)
                     if ring.add[f, g] not in st.members), None)
        w = {"not_closed": [ring.name(pair[0]), ring.name(pair[1])]} if pair else "empty"
    report.claim("star_is_ideal", st.is_ideal, w)
    report.claim("star_equals_ideal", body["star_equals_ideal"], {"maximal_ideals_over": over})
    return report


def _is_element(ring: TableRing, text: str) -> bool:
    try:
        ring.index(text)
        return True
    except ConstructionError:
        return False


# -- poset -----------------------------------------------------------------------------


def _retraction_body(p: SpecPoset, r) -> dict:
    if isinstance(r, Retraction):
        return {"map": {p.names[a]: p.names[b] for a, b in r.mapping.items()},
                "zariski_continuous": r.zariski_continuous, "flat_continuous": r.flat_continuous}
    return {"refused": p.names[r.witness], "reason": r.reason}


def _poset_report(subject: str, value, kind: str = "poset") -> Report:
    p = spec_poset_of_ring(value) if isinstance(value, TableRing) else value
    flags = shape_flags(p)
    mn, mx = min_retraction_poset(p), max_retraction_poset(p)
    body = {
        "poset": p.literal(),
        "points": list(p.names),
        "minimal": [p.names[a] for a in p.minimal],
        "maximal": [p.names[a] for a in p.maximal],
        "components": [sorted(p.names[a] for a in c) for c in p.components],
        "flags": flags,
        "min_retraction": _retraction_body(p, mn),
        "max_retraction": _retraction_body(p, mx),
        "dual": prime_inverse(p).literal(),
        "clopen_count": len(clopen_sets(p, ZARISKI)),
    }
    report = Report(subject, kind, body)
    below = {p.names[a]: [p.names[m] for m in p.minimals_below(a)] for a in range(p.k)}
    above = {p.names[a]: [p.names[m] for m in p.maximals_above(a)] for a in range(p.k)}
    comps = {"components": body["components"]}
    witness = {
        "mp_shape": {"minimals_below": below},
        "gelfand_shape": {"maximals_above": above},
        "zero_dim_shape": {"covers": [f"{p.names[a]}<{p.names[b]}" for a, b in p.covers()]},
        "purified_shape": {**comps, "minimal": body["minimal"]},
        "clean_shape": {**comps, "maximal": body["maximal"]},
    }
    for name in SHAPE_FLAGS:
        report.claim(f"flags.{name}", flags[name], witness[name])
    for label, r in (("min_retraction", mn), ("max_retraction", mx)):
        if isinstance(r, Retraction):
            report.claim(f"{label}.zariski_continuous", r.zariski_continuous, "preimage scan over Zariski opens")
            report.claim(f"{label}.flat_continuous", r.flat_continuous, "preimage scan over flat opens")
    return report


def poset_report(subject: str, value) -> Report:
    if isinstance(value, MonomialQuotientRing):
        raise ConstructionError("poset needs a poset literal or a finite table ring")
    return _poset_report(subject, value)


# -- verify / search ----------------------------------------------------------------------


def verify_report(suite: str, corpus: str | None, size: int | None) -> Report:
    if suite not in SUITES:
        raise ConstructionError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    spec = SUITES[suite]
    max_size = None
    if size is not None:
        if "poset" in spec.kinds:
            corpus = corpus or f"posets:{size}"
        else:
            max_size = size
    res = run_suite(suite, corpus, max_size=max_size)
    body = {"suite": suite, "claim": spec.claim, "corpus": res.corpus, "passed": res.passed,
            "failed": res.failed, "skipped": res.skipped, "ok": res.ok}
    report = Report(suite, "verify", body, status=OK if res.ok else FAIL)
    report.claim("ok", res.ok, res.first_failure or {"checked": res.passed})
    return report


def _flags_for(s: Subject, degree_bound: int) -> dict[str, bool | None]:
    if s.kind == "ring":
        return classify(s.value).as_dict()
    if s.kind == "poset":
        return shape_flags(s.value)
    return _classify_monomial(s.expr, s.value, degree_bound).body["flags"]


KNOWN_FLAGS = {"ring": set(FLAG_NAMES), "poset": set(SHAPE_FLAGS), "monomial": set(MONOMIAL_FLAGS)}


def search_report(predicate: str, corpus: str, degree_bound: int = DEFAULT_DEGREE_BOUND) -> Report:
    pred = parse_predicate(predicate)
    subjects = load_corpus(corpus)
    kinds = {s.kind for s in subjects}
    known = set.intersection(*(KNOWN_FLAGS[k] for k in kinds)) if kinds else set()
    unknown_flags = sorted(flag_names(pred) - known)
    if unknown_flags:
        raise ConstructionError(f"unknown flag(s) {', '.join(unknown_flags)}; known: {', '.join(sorted(known))}")
    examined = 0
    undecided = []
    match = None
    for s in subjects:
        examined += 1
        flags = _flags_for(s, degree_bound)
        if any(flags[f] is None for f in flag_names(pred)):
            undecided.append(s.expr)
            continue
        if evaluate(pred, flags):
            match = (s, flags)
            break
    body = {"predicate": predicate, "corpus": corpus, "corpus_size": len(subjects), "examined": examined,
            "found": match is not None, "match": match[0].expr if match else None,
            "exhausted": match is None}
    report = Report(predicate, "search", body)
    if match:
        report.claim("found", True, {"subject": match[0].expr, "flags": match[1]})
        report.claim("exhausted", False, {"stopped_at": match[0].expr})
    else:
        report.claim("found", False, {"examined": examined})
        report.claim("exhausted", True, {"examined": examined, "corpus_size": len(subjects)})
    if undecided:
        report.status = UNKNOWN
        report.notes.append(f"{len(undecided)} subject(s) undecided within degree bound {degree_bound}")
    return report


# -- text rendering ------------------------------------------------------------------------------


def _mark(v) -> str:
    return CHECK if v is True else CROSS if v is False else "?"


def _short(value, width: int = 72) -> str:
    text = value if isinstance(value, str) else json.dumps(value, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= width else text[: width - 3] + "..."


def _rows(rows: list[tuple[str, str]], indent: str = "  ") -> list[str]:
    if not rows:
        return []
    w = max(len(k) for k, _ in rows)
    return [f"{indent}{k.ljust(w)}  {v}".rstrip() for k, v in rows]


def render_text(report: Report) -> str:
    b = report.body
    lines = [f"{report.kind} {report.subject}", f"  status: {report.status}"]
    witness = {w["claim"]: w for w in report.witnesses}
    if report.kind == "classify" and "flags" in b:
        info = [(k, ", ".join(v) if isinstance(v, list) else str(v))
                for k, v in b.items() if k not in ("flags", "chain", "checks")]
        lines += _rows(info)
        lines.append("")
        flag_rows = []
        for name, value in b["flags"].items():
            w = witness[f"flags.{name}"]["witness"]
            if isinstance(w, dict) and "witness" in w:
                w = w["witness"]
            flag_rows.append((name, f"{_mark(value)}  {_short(w)}"))
        lines += _rows(flag_rows)
        if "chain" in b:
            lines += _rows([(k, _mark(v)) for k, v in b["chain"].items()])
    elif report.kind == "decompose":
        lines += _rows([("ring", b["ring"]), ("kind", b["kind"])])
        if b["decomposed"]:
            lines.append(f"  {b['ring']} = {b['product']}")
            lines += _rows([
                (f["canonical"] or f["factor"], f"{f['factor']}  kernel {f['kernel']}  idempotent {f['idempotent_generator']}")
                for f in b["factors"]
            ], indent="    ")
        else:
            lines.append(f"  refused: {b['reason']}")
            lines += _rows([(k, _short(v)) for k, v in witness["decomposed"]["witness"].items()], indent="    ")
    elif report.kind == "kernel":
        lines += _rows([(k, str(b[k])) for k in b if k not in ("membership", "is_minimal")]
                       + [("is_minimal", _mark(b["is_minimal"]))])
        for m in b["membership"]:
            sym = {"in": "∈", "out": "∉", "unknown": "?"}[m["verdict"]]
            extra = (f"witness {m['witness']}" if m.get("witness") else
                     f"blocking term {m['blocking_term']}" if m.get("blocking_term") else
                     f"no witness up to degree {m['degree_bound']}; needs degree {m['needed_degree']}"
                     if m["verdict"] == "unknown" else "")
            lines.append(f"    {m['element']} {sym} Ker  {extra}".rstrip())
    elif report.kind == "search":
        lines += _rows([(k, _mark(v) if isinstance(v, bool) else str(v)) for k, v in b.items()])
        if b["exhausted"]:
            lines.append(f"  exhausted: no member of {b['corpus']} satisfies {b['predicate']}")
    else:
        lines += _rows([(k, _mark(v) if isinstance(v, bool) else _short(v)) for k, v in b.items()
                        if not isinstance(v, dict)])
        for k, v in b.items():
            if isinstance(v, dict):
                lines += _rows([(f"{k}.{kk}", _mark(vv) if isinstance(vv, bool) else _short(vv))
                                for kk, vv in v.items()])
        if report.kind == "verify" and report.status != OK:
            lines.append(f"  first failure: {_short(witness['ok']['witness'])}")
    lines += [f"  note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"
