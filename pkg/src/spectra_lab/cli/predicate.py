"""Boolean predicates over report flags: ``!``, ``&&``, ``||``, parentheses."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .dsl import DSLSyntaxError

_TOKEN = re.compile(r"\s*(?:(&&)|(\|\|)|(!)|(\()|(\))|([A-Za-z_][A-Za-z0-9_]*))")


@dataclass(frozen=True)
class Flag:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Pred"


@dataclass(frozen=True)
class And:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Or:
    left: "Pred"
    right: "Pred"


Pred = Union[Flag, Not, And, Or]


def _tokenize(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected {text[pos:].lstrip()[0]!r}", len(text) - len(text[pos:].lstrip()), text)
        out.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return out


def parse_predicate(text: str) -> Pred:
    toks = _tokenize(text)
    i = 0

    def at() -> str | None:
        return toks[i][0] if i < len(toks) else None

    def where() -> int:
        return toks[i][1] if i < len(toks) else len(text)

    def disj() -> Pred:
        nonlocal i
        left = conj()
        while at() == "||":
            i += 1
            left = Or(left, conj())
        return left

    def conj() -> Pred:
        nonlocal i
        left = unary()
        while at() == "&&":
            i += 1
            left = And(left, unary())
        return left

    def unary() -> Pred:
        nonlocal i
        tok = at()
        if tok == "!":
            i += 1
            return Not(unary())
        if tok == "(":
            i += 1
            inner = disj()
            if at() != ")":
                raise DSLSyntaxError("expected ')'", where(), text)
            i += 1
            return inner
        if tok is None or not (tok[0].isalpha() or tok[0] == "_"):
            raise DSLSyntaxError("expected a flag name", where(), text)
        i += 1
        return Flag(tok)

    pred = disj()
    if i != len(toks):
        raise DSLSyntaxError(f"unexpected {at()!r}", where(), text)
    return pred


def flag_names(pred: Pred) -> set[str]:
    if isinstance(pred, Flag):
        return {pred.name}
    if isinstance(pred, Not):
        return flag_names(pred.arg)
    return flag_names(pred.left) | flag_names(pred.right)


def evaluate(pred: Pred, flags: Mapping[str, bool]) -> bool:
    if isinstance(pred, Flag):
        return bool(flags[pred.name])
    if isinstance(pred, Not):
        return not evaluate(pred.arg, flags)
    if isinstance(pred, And):
        return evaluate(pred.left, flags) and evaluate(pred.right, flags)
    return evaluate(pred.left, flags) or evaluate(pred.right, flags)
