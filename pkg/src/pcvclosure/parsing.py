"""Recursive-descent parser for elements of K and of K[X].

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ['^' ['-'] integer]
    atom   := integer | 't' index | 'X' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-t2^2`` is ``-(t2^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexgroup import RankError
from .valfield import FieldElement, KPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)(\d+)|(X)|([-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{message}{where}")


@dataclass
class _Tok:
    kind: str
    value: object
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", text, i)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            toks.append(_Tok("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(_Tok("var", int(m.group(3)), start))
        elif m.group(4):
            toks.append(_Tok("X", None, start))
        else:
            toks.append(_Tok(m.group(5), None, start))
        i = m.end()
    toks.append(_Tok("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, rank: int, allow_x: bool):
        self.text = text
        self.rank = rank
        self.allow_x = allow_x
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", self.text, tok.pos)
        self.i += 1
        return tok

    def parse(self) -> KPoly:
        if self.peek().kind == "end":
            raise ParseError("empty expression", self.text, 0)
        out = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected token {tok.kind!r}", self.text, tok.pos)
        return out

    def expr(self) -> KPoly:
        acc = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> KPoly:
        acc = self.factor()
        while self.peek().kind in ("*", "/"):
            tok = self.take()
            rhs = self.factor()
            if tok.kind == "*":
                acc = acc * rhs
            else:
                if rhs.degree > 0:
                    raise ParseError("division by a polynomial in X", self.text, tok.pos)
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, tok.pos)
                acc = acc.scale(rhs.coeffs[0].inverse())
        return acc

    def factor(self) -> KPoly:
        if self.peek().kind == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek().kind == "^":
            tok = self.take()
            sign = 1
            if self.peek().kind == "-":
                self.take()
                sign = -1
            n = sign * self.take("int").value
            if base.degree > 0:
                if n < 0:
                    raise ParseError("negative power of X", self.text, tok.pos)
                return base ** n
            if base.is_zero():
                if n < 0:
                    raise ParseError("division by zero", self.text, tok.pos)
                return base if n else KPoly.constant(FieldElement.one(self.rank))
            return KPoly.constant(base.coeffs[0] ** n)
        return base

    def atom(self) -> KPoly:
        tok = self.take()
        if tok.kind == "int":
            return KPoly.constant(FieldElement.from_rational(self.rank, tok.value))
        if tok.kind == "var":
            if not 1 <= tok.value <= self.rank:
                raise ParseError(
                    f"variable index t{tok.value} out of rank {self.rank}", self.text, tok.pos
                )
            return KPoly.constant(FieldElement.variable(self.rank, tok.value))
        if tok.kind == "X":
            if not self.allow_x:
                raise ParseError("X is not allowed in a field element", self.text, tok.pos)
            return KPoly.x(self.rank)
        if tok.kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {tok.kind!r}", self.text, tok.pos)


def parse_expr(text: str, rank: int) -> FieldElement:
    """Parse an element of Q(t1..t_rank)."""
    if rank < 1:
        raise RankError("rank must be at least 1")
    p = _Parser(text, rank, allow_x=False).parse()
    return p.coeff(0)


def parse_kpoly(text: str, rank: int) -> KPoly:
    """Parse a polynomial in X over Q(t1..t_rank)."""
    if rank < 1:
        raise RankError("rank must be at least 1")
    return _Parser(text, rank, allow_x=True).parse()
