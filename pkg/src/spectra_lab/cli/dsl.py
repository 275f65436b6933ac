"""Ring-expression language.

Grammar (whitespace-insensitive)::

    expr     := factor ("x" factor)*              left-associative product
    factor   := atom ("/" "(" literal ("," literal)* ")")*
    atom     := "Z/" INT | "GF(" INT ")" | monomial_ring | poset | "(" expr ")"
    monomial_ring := "F" INT "[" var ("," var)* "]" ["/" "(" mono ("," mono)* ")"]
    mono     := var ["^" INT] ("*" var ["^" INT])*
    poset    := "poset{" [chain ("," chain)*] "}"     chain := name ("<" name)*

Quotient generators are element literals as the ring prints them: ``3``
in Z/n, ``(1,0)`` in products, ``[2]`` in quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..errors import ConstructionError, SpectraError
from ..ideals import ideal_from_generators
from ..monomial import MonomialQuotientRing
from ..poset import SpecPoset
from ..ring import check_size, is_prime, make_gf, make_product, make_quotient, make_zmod


class DSLSyntaxError(SpectraError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"syntax error at position {position}: {message}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class GF:
    p: int


@dataclass(frozen=True)
class Product:
    factors: tuple["RingExpr", ...]


@dataclass(frozen=True)
class Quotient:
    base: "RingExpr"
    gens: tuple[str, ...]


@dataclass(frozen=True)
class MonomialRing:
    char: int
    vars: tuple[str, ...]
    monomials: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PosetLiteral:
    points: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def make(cls, points, edges) -> "PosetLiteral":
        edges = tuple(sorted(set(edges)))
        pts = set(points) | {a for e in edges for a in e}
        return cls(tuple(sorted(pts)), edges)


RingExpr = Union[Zmod, GF, Product, Quotient, MonomialRing, PosetLiteral]


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise DSLSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.eat(s):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            self.error(f"expected {s!r}, found {found!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_'"):
                self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start:self.pos]

    # -- grammar --

    def parse(self) -> RingExpr:
        expr = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return expr

    def expr(self) -> RingExpr:
        start = self.pos
        factors = [self.factor()]
        while self.eat("x"):
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        for f in factors:
            if isinstance(f, (MonomialRing, PosetLiteral)):
                self.error("only finite table rings can be multiplied", start)
        return Product(tuple(factors))

    def factor(self) -> RingExpr:
        base = self.atom()
        while self.peek("/"):
            if isinstance(base, (MonomialRing, PosetLiteral)):
                self.error("this expression cannot be quotiented further")
            self.expect("/")
            base = Quotient(base, self.literals())
        return base

    def literals(self) -> tuple[str, ...]:
        self.expect("(")
        out = [self.literal()]
        while self.eat(","):
            out.append(self.literal())
        self.expect(")")
        return tuple(out)

    def literal(self) -> str:
        """Balanced text up to a top-level ',' or ')'."""
        self.skip()
        start = self.pos
        closing = {"(": ")", "[": "]"}
        stack: list[str] = []
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in closing:
                stack.append(closing[c])
            elif c in ")]":
                if not stack:
                    break
                if stack.pop() != c:
                    self.error(f"unbalanced {c!r}")
            elif c == "," and not stack:
                break
            self.pos += 1
        if stack:
            self.error("unbalanced brackets in element literal")
        text = "".join(self.text[start:self.pos].split())
        if not text:
            self.error("empty element literal")
        return text

    def atom(self) -> RingExpr:
        self.skip()
        start = self.pos
        if self.eat("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if self.eat("poset"):
            return self.poset()
        if self.eat("GF"):
            self.expect("(")
            p = self.integer()
            self.expect(")")
            return GF(p)
        if self.eat("Z"):
            self.expect("/")
            return Zmod(self.integer())
        if self.eat("F"):
            return self.monomial_ring()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        self.error(f"expected a ring, found {self.text[start]!r}")

    def monomial_ring(self) -> MonomialRing:
        char = self.integer()
        self.expect("[")
        vars = [self.name()]
        while self.eat(","):
            vars.append(self.name())
        self.expect("]")
        if len(set(vars)) != len(vars):
            self.error("repeated variable")
        monos: list[tuple[int, ...]] = []
        if self.peek("/"):
            self.expect("/")
            self.expect("(")
            monos.append(self.monomial(vars))
            while self.eat(","):
                monos.append(self.monomial(vars))
            self.expect(")")
        return MonomialRing(char, tuple(vars), tuple(monos))

    def monomial(self, vars: list[str]) -> tuple[int, ...]:
        exps = [0] * len(vars)
        while True:
            start = self.pos
            v = self.name()
            if v not in vars:
                self.error(f"unknown variable {v!r}", start)
            e = self.integer() if self.eat("^") else 1
            exps[vars.index(v)] += e
            if not self.eat("*"):
                break
        if not any(exps):
            self.error("the monomial 1 generates the unit ideal")
        return tuple(exps)

    def poset(self) -> PosetLiteral:
        self.expect("{")
        points: list[str] = []
        edges: list[tuple[str, str]] = []
        if not self.eat("}"):
            while True:
                chain = [self.name()]
                while self.eat("<"):
                    chain.append(self.name())
                points.extend(chain)
                edges.extend(zip(chain, chain[1:]))
                if self.eat("}"):
                    break
                self.expect(",")
        return PosetLiteral.make(points, edges)


def parse(text: str) -> RingExpr:
    return _Parser(text).parse()


# -- pretty printer -------------------------------------------------------------


def _mono(m: tuple[int, ...], vars: tuple[str, ...]) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vars, m) if e)


def pretty(expr: RingExpr) -> str:
    if isinstance(expr, Zmod):
        return f"Z/{expr.n}"
    if isinstance(expr, GF):
        return f"GF({expr.p})"
    if isinstance(expr, Product):
        return " x ".join(f"({pretty(f)})" if isinstance(f, Product) else pretty(f) for f in expr.factors)
    if isinstance(expr, Quotient):
        base = pretty(expr.base)
        if isinstance(expr.base, Product):
            base = f"({base})"
        return f"{base} / ({', '.join(expr.gens)})"
    if isinstance(expr, MonomialRing):
        head = f"F{expr.char}[{','.join(expr.vars)}]"
        if not expr.monomials:
            return head
        return head + "/(" + ", ".join(_mono(m, expr.vars) for m in expr.monomials) + ")"
    if isinstance(expr, PosetLiteral):
        touched = {a for e in expr.edges for a in e}
        items = [f"{a}<{b}" for a, b in expr.edges] + [p for p in expr.points if p not in touched]
        return "poset{" + ", ".join(items) + "}"
    raise TypeError(f"not a ring expression: {expr!r}")


# -- construction -----------------------------------------------------------------


def table_size(expr: RingExpr) -> int | None:
    """Element count of a table-ring expression before building it (upper bound for quotients)."""
    if isinstance(expr, Zmod):
        return expr.n
    if isinstance(expr, GF):
        return expr.p
    if isinstance(expr, Product):
        sizes = [table_size(f) for f in expr.factors]
        return None if None in sizes else math.prod(sizes)
    if isinstance(expr, Quotient):
        return table_size(expr.base)
    return None


def build(expr: RingExpr):
    """Construct the ring or poset; size caps are checked before any table is allocated."""
    size = table_size(expr)
    if size is not None:
        check_size(size)
    return _build(expr)


def _build(expr: RingExpr):
    if isinstance(expr, Zmod):
        if expr.n < 1:
            raise ConstructionError("Z/n needs n >= 1")
        return make_zmod(expr.n)
    if isinstance(expr, GF):
        if not is_prime(expr.p):
            raise ConstructionError(f"GF({expr.p}): {expr.p} is not prime")
        return make_gf(expr.p)
    if isinstance(expr, Product):
        return make_product([_build(f) for f in expr.factors])
    if isinstance(expr, Quotient):
        base = _build(expr.base)
        ideal = ideal_from_generators(base, [base.index(g) for g in expr.gens])
        return make_quotient(base, ideal)
    if isinstance(expr, MonomialRing):
        return MonomialQuotientRing.create(expr.char, expr.vars, expr.monomials)
    if isinstance(expr, PosetLiteral):
        return SpecPoset.from_edges(expr.points, expr.edges)
    raise TypeError(f"not a ring expression: {expr!r}")
