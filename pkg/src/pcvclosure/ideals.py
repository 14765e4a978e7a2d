"""Fractional ideals of V as up-closed value sets ("cuts").

Three shapes cover every ideal this package produces:

* ``Zero``                  value set {inf}
* ``ClosedPrincipal(theta)`` value set {g : g >= theta}      (the ideal x V with v(x) = theta)
* ``OpenCoset(theta, j)``    value set {g : g - theta > D_j}, 1 <= j < r

``OpenCoset(theta, r)`` coincides with ``ClosedPrincipal(theta + e_r)`` and is
stored in that form, so structural equality of canonical cuts is set equality.
Prime ideals are P_0 = (0) and P_j = OpenCoset(0, j); P_r = M.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .lexgroup import (
    INFINITY,
    GroupElement,
    RankError,
    Value,
    exceeds_convex,
    leading_index,
    prefix_sign,
    truncate,
)
from .valfield import FieldElement, mono, valuation


class NotInMaximalIdeal(ValueError):
    """The ideal passed to the largest-prime operator is not contained in M."""


@dataclass(frozen=True)
class Zero:
    rank: int

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class ClosedPrincipal:
    theta: GroupElement

    @property
    def rank(self) -> int:
        return self.theta.rank

    def __str__(self) -> str:
        return f">={self.theta}"


@dataclass(frozen=True)
class OpenCoset:
    theta: GroupElement
    j: int

    @property
    def rank(self) -> int:
        return self.theta.rank

    def __str__(self) -> str:
        inner = ",".join(str(c) for c in self.theta.coords)
        return f">({inner};{self.j})"


Cut = Union[Zero, ClosedPrincipal, OpenCoset]


def open_coset(theta: GroupElement, j: int) -> Cut:
    """Canonical cut {g : g - theta > D_j}."""
    r = theta.rank
    if not 1 <= j <= r:
        raise ValueError(f"convex index {j} outside 1..{r}")
    if j == r:
        return ClosedPrincipal(theta + GroupElement.unit(r, r))
    return OpenCoset(truncate(theta, j), j)


def principal(x: FieldElement) -> Cut:
    """The ideal x V."""
    v = valuation(x)
    if v is INFINITY:
        return Zero(x.rank)
    return ClosedPrincipal(v)


def maximal_ideal(rank: int) -> Cut:
    return ClosedPrincipal(GroupElement.unit(rank, rank))


@dataclass(frozen=True)
class PrimeCut:
    """The prime ideal P_j, 0 <= j <= rank."""

    j: int
    rank: int

    def __post_init__(self):
        if not 0 <= self.j <= self.rank:
            raise ValueError(f"prime index {self.j} outside 0..{self.rank}")

    def as_cut(self) -> Cut:
        if self.j == 0:
            return Zero(self.rank)
        return open_coset(GroupElement.zero(self.rank), self.j)

    def __le__(self, other: "PrimeCut") -> bool:
        return self.j <= other.j

    def __str__(self) -> str:
        return f"P_{self.j}"


def contains_value(cut: Cut, g: Value) -> bool:
    if g is INFINITY:
        return True
    if isinstance(cut, Zero):
        return False
    if g.rank != cut.rank:
        raise RankError(f"rank mismatch: {g.rank} vs {cut.rank}")
    if isinstance(cut, ClosedPrincipal):
        return g >= cut.theta
    return exceeds_convex(g - cut.theta, cut.j)


def cut_contains(cut: Cut, x: FieldElement) -> bool:
    return contains_value(cut, valuation(x))


def cut_shift(cut: Cut, g: GroupElement) -> Cut:
    """Translate the value set by g."""
    if isinstance(cut, Zero):
        return cut
    if isinstance(cut, ClosedPrincipal):
        return ClosedPrincipal(cut.theta + g)
    return open_coset(cut.theta + g, cut.j)


def cut_scale(cut: Cut, x: FieldElement) -> Cut:
    """The ideal x * I."""
    v = valuation(x)
    if v is INFINITY:
        raise ZeroDivisionError("cannot scale an ideal by 0")
    return cut_shift(cut, v)


def cut_subset(a: Cut, b: Cut) -> bool:
    """Value-set inclusion a <= b, by case analysis over the three shapes."""
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")
    if isinstance(a, Zero):
        return True
    if isinstance(b, Zero):
        return False
    if isinstance(a, ClosedPrincipal):
        # b is up-closed, so it suffices that theta(a) lies in b
        return contains_value(b, a.theta)
    if isinstance(b, ClosedPrincipal):
        # elements of a come arbitrarily close to theta(a) + D_j from above
        return prefix_sign(b.theta - a.theta, a.j) <= 0
    c = a.theta - b.theta
    if b.j >= a.j:
        return prefix_sign(c, a.j) >= 0
    return prefix_sign(c, b.j) > 0


def cut_eq(a: Cut, b: Cut) -> bool:
    return cut_subset(a, b) and cut_subset(b, a)


def largest_prime_in(cut: Cut) -> PrimeCut:
    """Largest prime ideal contained in an ideal I <= M.

    For I strictly inside M this is the intersection of t^n V over t outside I;
    for I = M the answer is M itself.
    """
    r = cut.rank
    if not cut_subset(cut, maximal_ideal(r)):
        raise NotInMaximalIdeal(f"{cut} is not contained in the maximal ideal")
    if isinstance(cut, Zero):
        return PrimeCut(0, r)
    if isinstance(cut, ClosedPrincipal):
        if cut.theta == GroupElement.unit(r, r):
            return PrimeCut(r, r)
        return PrimeCut(leading_index(cut.theta) - 1, r)
    lead = leading_index(cut.theta)
    if lead is None:
        return PrimeCut(cut.j, r)
    return PrimeCut(min(cut.j, lead - 1), r)


def largest_prime_strictly_in(cut: Cut) -> PrimeCut:
    """Largest prime ideal properly contained in I."""
    p = largest_prime_in(cut)
    if cut == p.as_cut():
        if p.j == 0:
            raise ValueError("the zero ideal contains no smaller prime")
        return PrimeCut(p.j - 1, p.rank)
    return p


@dataclass(frozen=True)
class OracleWitness:
    exponent: tuple[int, ...]
    power: int

    def __str__(self) -> str:
        return f"t^{self.exponent} with n={self.power}"


class LargestPrimeOracle:
    """Brute-force membership test for the intersection of t^n V, t outside I.

    t runs over Laurent monomials with exponents in [-B, B]^r whose value
    lies outside I, and n over 1..N.  Passing is necessary for membership
    in the largest prime inside I; a failure always carries a witness (t, n).
    For I = M the prime is M itself and membership in M is tested directly.
    """

    def __init__(self, cut: Cut, box: int = 8, power_bound: int = 8):
        r = cut.rank
        if not cut_subset(cut, maximal_ideal(r)):
            raise NotInMaximalIdeal(f"{cut} is not contained in the maximal ideal")
        self.cut = cut
        self.box = box
        self.power_bound = power_bound
        self.is_maximal = cut_eq(cut, maximal_ideal(r))
        # x passes iff n*v(t) <= v(x) for every listed (t, n); the binding
        # constraint for each t is n = 1 if v(t) <= 0 and n = N otherwise.
        self._bounds: list[tuple[GroupElement, tuple[int, ...]]] = []
        zero = GroupElement.zero(r)
        for e in itertools.product(range(-box, box + 1), repeat=r):
            g = GroupElement(e)
            if contains_value(cut, g):
                continue
            self._bounds.append((g * power_bound if g > zero else g, e))
        self._bounds.sort(key=lambda item: item[0], reverse=True)

    def witness(self, x: FieldElement) -> Optional[OracleWitness]:
        v = valuation(x)
        if self.is_maximal:
            if v is INFINITY or v > GroupElement.zero(self.cut.rank):
                return None
            return OracleWitness((0,) * self.cut.rank, 1)
        if v is INFINITY:
            return None
        for bound, e in self._bounds:
            if bound <= v:
                return None
            g = GroupElement(e)
            n = next(n for n in range(1, self.power_bound + 1) if n * g > v)
            return OracleWitness(e, n)
        return None

    def __call__(self, x: FieldElement) -> bool:
        return self.witness(x) is None


def largest_prime_oracle(cut: Cut, box: int = 8, power_bound: int = 8) -> LargestPrimeOracle:
    return LargestPrimeOracle(cut, box, power_bound)


def witness_element(w: OracleWitness) -> FieldElement:
    return mono(1, w.exponent)
