"""The regular basis H_n of Int(E, V) and the closure oracle built on it.

H_n(X) = prod_{i<n} (X - s_i) / (s_n - s_i).  Each H_n is integer-valued on
E, and alpha lies in the polynomial closure of E exactly when H_n(alpha) is
in V for every n.  The oracle below checks that up to a finite horizon, so
it can refute membership but never certify it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lexgroup import INFINITY, GroupElement, Value
from .pcvseq import PCSeq
from .valfield import FieldElement, KPoly, in_V, is_unit, valuation


class RegularBasisViolation(AssertionError):
    def __init__(self, n: int, j: int, value: FieldElement):
        self.n, self.j = n, j
        super().__init__(f"H_{n}(s_{j}) = {value} is neither 0 nor a unit")


def hn_build(E: PCSeq, n: int) -> KPoly:
    E.validate()
    X = KPoly.x(E.rank)
    sn = E.term(n)
    out = KPoly.constant(FieldElement.one(E.rank))
    for i in range(n):
        si = E.term(i)
        out = (X - si).scale((sn - si).inverse()) * out
    return out


def hn_value(E: PCSeq, n: int, alpha: FieldElement) -> FieldElement:
    """H_n(alpha) as an exact product."""
    sn = E.term(n)
    out = FieldElement.one(E.rank)
    for i in range(n):
        si = E.term(i)
        out = out * (alpha - si) / (sn - si)
    return out


def hn_valuation(E: PCSeq, n: int, alpha: FieldElement) -> Value:
    """v(H_n(alpha)), summed factor by factor."""
    sn = E.term(n)
    total: Value = GroupElement.zero(E.rank)
    for i in range(n):
        si = E.term(i)
        num = valuation(alpha - si)
        if num is INFINITY:
            return INFINITY
        total = total + num - valuation(sn - si)
    return total


def hn_values_check(E: PCSeq, n: int, j: int) -> str:
    """'zero' for j < n, 'unit' for j >= n; raises if the basis property fails."""
    value = hn_value(E, n, E.term(j))
    if j < n and value.is_zero():
        return "zero"
    if j >= n and is_unit(value):
        return "unit"
    raise RegularBasisViolation(n, j, value)


@dataclass(frozen=True)
class OracleResult:
    passed: bool
    horizon: int
    witness: Optional[int] = None
    valuation: Optional[Value] = None

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        if self.passed:
            return f"Pass(N={self.horizon})"
        return f"Fail({self.witness}) with v(H_{self.witness}) = {self.valuation}"


def oracle_in_closure(E: PCSeq, alpha: FieldElement, horizon: int = 30) -> OracleResult:
    """Least n <= horizon with H_n(alpha) outside V, if any.

    Valuations of alpha - s_i and s_n - s_i are computed from the actual
    terms, independently of the closure description.
    """
    E.validate()
    near = []
    for i in range(horizon):
        near.append(valuation(alpha - E.term(i)))
    for n in range(1, horizon + 1):
        if any(near[i] is INFINITY for i in range(n)):
            continue
        v: GroupElement = GroupElement.zero(E.rank)
        for i in range(n):
            v = v + near[i] - E.gap_valuation(i, n)
        if v < GroupElement.zero(E.rank):
            return OracleResult(False, horizon, n, v)
    return OracleResult(True, horizon)


@dataclass(frozen=True)
class BasisExpansion:
    coeffs: tuple[FieldElement, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def in_V(self) -> bool:
        return all(in_V(a) for a in self.coeffs)


def expand_in_basis(E: PCSeq, f: KPoly) -> BasisExpansion:
    """Coefficients a_n with f = sum a_n H_n.

    H_n has degree n, so peeling off leading coefficients from the top
    degree down determines every a_n.
    """
    E.validate()
    coeffs: list[FieldElement] = [FieldElement.zero(E.rank)] * (f.degree + 1)
    rest = f
    for n in range(f.degree, -1, -1):
        if rest.degree < n:
            continue
        H = hn_build(E, n)
        a = rest.coeffs[n] / H.coeffs[n]
        coeffs[n] = a
        rest = rest - H.scale(a)
    if not rest.is_zero():
        raise ArithmeticError("basis expansion left a nonzero remainder")
    return BasisExpansion(tuple(coeffs))


def reconstruct(E: PCSeq, expansion: BasisExpansion) -> KPoly:
    out = KPoly(E.rank)
    for n, a in enumerate(expansion.coeffs):
        if not a.is_zero():
            out = out + hn_build(E, n).scale(a)
    return out


def is_integer_valued(E: PCSeq, f: KPoly) -> bool:
    return expand_in_basis(E, f).in_V()
