"""Exact arithmetic in K = Q(t1, ..., tr) with the lex monomial valuation.

The valuation of a nonzero polynomial is the lex-smallest exponent in its
support; for a fraction it is v(num) - v(den).  Its valuation ring V has
value group Z^r under lexicographic order, so V has rank r.

Polynomials are backed by FLINT's fmpq_mpoly in lex order.  Fractions are
kept reduced by gcd, but equality is still decided by cross-multiplication
and never relies on a normal form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence, Union

import flint

from .lexgroup import INFINITY, GroupElement, RankError, Value

Exponent = tuple[int, ...]
Coeff = Union[int, Fraction]


def _ctx(rank: int) -> flint.fmpq_mpoly_ctx:
    if rank < 1:
        raise RankError("rank must be at least 1")
    return flint.fmpq_mpoly_ctx.get(tuple(f"t{i}" for i in range(1, rank + 1)), "lex")


def _to_fmpq(c: Coeff) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class MPoly:
    """Sparse polynomial in r variables with rational coefficients (flint backed)."""

    __slots__ = ("rank", "p")

    def __init__(self, rank: int, terms: Optional[Mapping[Exponent, Coeff]] = None):
        ctx = _ctx(rank)
        clean: dict[Exponent, flint.fmpq] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != rank:
                raise RankError(f"exponent {e} does not have length {rank}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent {e} in polynomial")
            clean[e] = clean.get(e, flint.fmpq(0)) + _to_fmpq(c)
        self.rank = rank
        self.p = ctx.from_dict({e: c for e, c in clean.items() if c != 0})

    @classmethod
    def _wrap(cls, rank: int, p: flint.fmpq_mpoly) -> "MPoly":
        out = object.__new__(cls)
        out.rank = rank
        out.p = p
        return out

    @classmethod
    def constant(cls, rank: int, c: Coeff) -> "MPoly":
        c = Fraction(c)
        return cls(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def monomial(cls, rank: int, e: Sequence[int], c: Coeff = 1) -> "MPoly":
        return cls(rank, {tuple(e): c})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return {tuple(map(int, e)): _to_fraction(c) for e, c in self.p.terms()}

    def _check(self, other: "MPoly") -> None:
        if other.rank != self.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def is_constant(self) -> bool:
        return self.p.is_constant()

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.rank, Fraction(0))

    def order(self) -> Optional[Exponent]:
        """Lex-min exponent of the support (None for zero)."""
        if self.p.is_zero():
            return None
        return tuple(map(int, self.p.monoms()[-1]))

    def trailing_coefficient(self) -> Fraction:
        """Coefficient of the lex-min term."""
        return _to_fraction(self.p.coeffs()[-1])

    def __len__(self) -> int:
        return len(self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            self._check(other)
            return self.p == other.p
        return NotImplemented

    __hash__ = None

    def __neg__(self) -> "MPoly":
        return MPoly._wrap(self.rank, -self.p)

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        return MPoly._wrap(self.rank, self.p + other.p)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        return MPoly._wrap(self.rank, self.p - other.p)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        return MPoly._wrap(self.rank, self.p * other.p)

    def scale(self, c: Coeff) -> "MPoly":
        return MPoly._wrap(self.rank, self.p * _to_fmpq(c))

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return MPoly._wrap(self.rank, self.p ** n)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        terms = self.terms
        if not terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def gcd(self, other: "MPoly") -> "MPoly":
        self._check(other)
        return MPoly._wrap(self.rank, self.p.gcd(other.p))

    def divide_exact(self, other: "MPoly") -> Optional["MPoly"]:
        """self / other if other divides self exactly, else None."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod(self.p, other.p)
        return MPoly._wrap(self.rank, q) if r.is_zero() else None

    def __repr__(self) -> str:
        return f"MPoly({self.rank}, {format_mpoly(self)!r})"

    def __str__(self) -> str:
        return format_mpoly(self)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"t{i}")
        elif k:
            parts.append(f"t{i}^{k}")
    return "*".join(parts)


def format_mpoly(p: MPoly) -> str:
    """Terms in lex-increasing exponent order, e.g. ``-t2 + t2^2``."""
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms):
        c = p.terms[e]
        mono = _format_monomial(e)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(out)


class FieldElement:
    """An element num/den of Q(t1..tr)."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: Optional[MPoly] = None, *, reduce: bool = True):
        if den is None:
            den = MPoly.constant(num.rank, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def rank(self) -> int:
        return self.num.rank

    @classmethod
    def from_rational(cls, rank: int, c: Coeff) -> "FieldElement":
        return cls(MPoly.constant(rank, c), reduce=False)

    @classmethod
    def zero(cls, rank: int) -> "FieldElement":
        return cls.from_rational(rank, 0)

    @classmethod
    def one(cls, rank: int) -> "FieldElement":
        return cls.from_rational(rank, 1)

    @classmethod
    def variable(cls, rank: int, i: int) -> "FieldElement":
        """The generator t_i (1-based)."""
        if not 1 <= i <= rank:
            raise RankError(f"variable t{i} outside rank {rank}")
        return mono(1, [int(k == i) for k in range(1, rank + 1)])

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Rational)):
            return FieldElement.from_rational(self.rank, Fraction(other))
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.num, self.den, reduce=False)

    def __add__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if self.den == other.den:
            return FieldElement(self.num + other.num, self.den)
        if other.den.is_constant():
            k = other.den.constant_value()
            return FieldElement(self.num + other.num.scale(1 / k) * self.den, self.den)
        if self.den.is_constant():
            k = self.den.constant_value()
            return FieldElement(self.num.scale(1 / k) * other.den + other.num, other.den)
        return FieldElement(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElement":
        other = self._coerce(other)
        return FieldElement(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.den, self.num)

    def __truediv__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in K")
        return FieldElement(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "FieldElement":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.num ** n, self.den ** n)

    def valuation(self) -> Value:
        return valuation(self)

    def __repr__(self) -> str:
        return f"FieldElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def _reduce(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    """Cancel the gcd and scale so the lex-min term of den has coefficient 1."""
    rank = num.rank
    if num.is_zero():
        return num, MPoly.constant(rank, 1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = MPoly._wrap(rank, num.p / g.p)
            den = MPoly._wrap(rank, den.p / g.p)
    c = den.trailing_coefficient()
    if c != 1:
        num, den = num.scale(1 / c), den.scale(1 / c)
    return num, den


def mono(c: Coeff, e: Sequence[int]) -> FieldElement:
    """The Laurent monomial c * t^e as a fraction."""
    c = Fraction(c)
    if not c:
        raise ValueError("mono requires a nonzero coefficient")
    rank = len(e)
    pos = tuple(max(k, 0) for k in e)
    neg = tuple(max(-k, 0) for k in e)
    return FieldElement(MPoly.monomial(rank, pos, c), MPoly.monomial(rank, neg), reduce=False)


def valuation(x: FieldElement) -> Value:
    if x.is_zero():
        return INFINITY
    a, b = x.num.order(), x.den.order()
    return GroupElement(tuple(i - j for i, j in zip(a, b)))


def in_V(x: FieldElement) -> bool:
    v = valuation(x)
    return v is INFINITY or not v.coords < (0,) * v.rank


def in_M(x: FieldElement) -> bool:
    v = valuation(x)
    return v is INFINITY or v.coords > (0,) * v.rank


def is_unit(x: FieldElement) -> bool:
    v = valuation(x)
    return v is not INFINITY and v.is_zero()


def geo_sum(u: FieldElement, b: GroupElement, n0: int, n: int) -> FieldElement:
    """Closed form of sum_{i=n0}^{n-1} u * t^(i*b)."""
    if b <= GroupElement.zero(b.rank):
        raise ValueError(f"ratio exponent {b} is not lex-positive")
    if u.is_zero():
        raise ValueError("geo_sum requires u != 0")
    if n < n0:
        raise ValueError(f"n={n} < n0={n0}")
    if n == n0:
        return FieldElement.zero(u.rank)
    one = FieldElement.one(u.rank)
    return u * (mono(1, (n0 * b).coords) - mono(1, (n * b).coords)) / (one - mono(1, b.coords))


def format_element(x: FieldElement) -> str:
    """Display form; parseable back by :func:`pcvclosure.parsing.parse_expr`."""
    num, den = x.num, x.den
    if den.is_constant():
        k = den.constant_value()
        if k == 1:
            return format_mpoly(num)
        num = num.scale(1 / k)
        if len(num.terms) <= 1:
            return format_mpoly(num)
        c = num.content()
        inner = num.scale(1 / c)
        if c.numerator == 1:
            return f"({format_mpoly(inner)})/{c.denominator}"
        return f"{_format_coeff(c)}*({format_mpoly(inner)})"
    top = format_mpoly(num)
    if len(num.terms) > 1:
        top = f"({top})"
    return f"{top}/({format_mpoly(den)})"


class KPoly:
    """Polynomial in X with coefficients in K, stored low degree first."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs: Iterable[FieldElement] = ()):
        cs = list(coeffs)
        for c in cs:
            if c.rank != rank:
                raise RankError(f"coefficient rank {c.rank} differs from {rank}")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.rank = rank
        self.coeffs = cs

    @classmethod
    def constant(cls, c: FieldElement) -> "KPoly":
        return cls(c.rank, [c])

    @classmethod
    def x(cls, rank: int) -> "KPoly":
        return cls(rank, [FieldElement.zero(rank), FieldElement.one(rank)])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else FieldElement.zero(self.rank)

    def _coerce(self, other) -> "KPoly":
        if isinstance(other, KPoly):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, FieldElement):
            return KPoly.constant(other)
        if isinstance(other, (int, Rational)):
            return KPoly.constant(FieldElement.from_rational(self.rank, other))
        raise TypeError(f"cannot combine KPoly with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __add__(self, other) -> "KPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return KPoly(self.rank, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly(self.rank, [-c for c in self.coeffs])

    def __sub__(self, other) -> "KPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "KPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "KPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return KPoly(self.rank)
        out = [FieldElement.zero(self.rank)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return KPoly(self.rank, out)

    __rmul__ = __mul__

    def scale(self, c: FieldElement) -> "KPoly":
        return KPoly(self.rank, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "KPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial in X")
        out = KPoly.constant(FieldElement.one(self.rank))
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, alpha: FieldElement) -> FieldElement:
        return kpoly_eval(self, alpha)

    def __repr__(self) -> str:
        return f"KPoly({format_kpoly(self)!r})"

    def __str__(self) -> str:
        return format_kpoly(self)


def kpoly_eval(f: KPoly, alpha: FieldElement) -> FieldElement:
    acc = FieldElement.zero(f.rank)
    for c in reversed(f.coeffs):
        acc = acc * alpha + c
    return acc


def format_kpoly(f: KPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        xs = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        cs = format_element(c)
        if not xs:
            parts.append(f"({cs})" if i or len(parts) else cs)
        elif cs == "1":
            parts.append(xs)
        else:
            parts.append(f"({cs})*{xs}")
    return " + ".join(parts)
