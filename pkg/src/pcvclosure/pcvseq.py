"""Pseudo-convergent sequences with a geometric tail and their polynomial closure.

A sequence is an explicit prefix s_0..s_{n0} followed by differences
c_n = u * t^(n*b) for n >= n0, with b > 0.  Its gauge is
delta_n = v(s_{n+1} - s_n), and in this model every such sequence has the
pseudo-limit sigma = s_{n0} + u t^(n0 b) / (1 - t^b).

The polynomial closure is the disjoint union

    (pseudo-limits: sigma + Br(E))  u  U_{k >= 0} (s_k + c_k P_k)

where Br(E) is the breadth ideal and P_k the largest prime ideal inside
c_k^{-1} Br(E).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .ideals import (
    Cut,
    PrimeCut,
    Zero,
    contains_value,
    cut_contains,
    cut_scale,
    largest_prime_in,
    open_coset,
)
from .lexgroup import (
    INFINITY,
    AffineExp,
    GroupElement,
    RankError,
    Value,
    affine_first_above,
    affine_solve,
    leading_index,
)
from .valfield import FieldElement, geo_sum, mono, valuation


class NotPseudoConvergent(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"not pseudo-convergent at index {index}: {reason}")


@dataclass(frozen=True, eq=False)
class GeoTail:
    """Differences c_n = u * t^(n*b) for n >= start."""

    u: FieldElement
    b: GroupElement
    start: int

    def diff(self, n: int) -> FieldElement:
        return self.u * mono(1, (n * self.b).coords)

    def gauge(self) -> AffineExp:
        return AffineExp(valuation(self.u), self.b, self.start)


class PCSeq:
    """A pseudo-convergent sequence given by a prefix and a geometric tail.

    Terms are computed lazily and memoized; the object is otherwise immutable.
    """

    def __init__(self, prefix: Sequence[FieldElement], u: FieldElement, b, *, validate: bool = True):
        if not prefix:
            raise ValueError("the prefix must contain at least s_0")
        self.rank = prefix[0].rank
        b = b if isinstance(b, GroupElement) else GroupElement(tuple(b))
        for x in (*prefix, u):
            if x.rank != self.rank:
                raise RankError("all terms must share one rank")
        if b.rank != self.rank:
            raise RankError(f"tail exponent {b} does not have rank {self.rank}")
        self.prefix: tuple[FieldElement, ...] = tuple(prefix)
        self.tail = GeoTail(u, b, len(prefix) - 1)
        self._terms: dict[int, FieldElement] = dict(enumerate(self.prefix))
        self._gaps: dict[tuple[int, int], Value] = {}
        self._valid: Optional[bool] = None
        if validate:
            self.validate()

    @property
    def n0(self) -> int:
        return self.tail.start

    def __repr__(self) -> str:
        pre = ", ".join(str(x) for x in self.prefix)
        return f"PCSeq(prefix=[{pre}], u={self.tail.u}, b={self.tail.b})"

    # -- basic data -----------------------------------------------------

    def term(self, n: int) -> FieldElement:
        if n < 0:
            raise IndexError("negative index")
        s = self._terms.get(n)
        if s is None:
            t = self.tail
            s = self.prefix[-1] + geo_sum(t.u, t.b, t.start, n)
            self._terms[n] = s
        return s

    def gap_valuation(self, i: int, n: int) -> Value:
        """v(s_n - s_i), computed from the terms themselves and memoized."""
        key = (i, n)
        g = self._gaps.get(key)
        if g is None:
            g = self._gaps[key] = valuation(self.term(n) - self.term(i))
        return g

    def terms(self, count: int) -> list[FieldElement]:
        return [self.term(n) for n in range(count)]

    def diff(self, n: int) -> FieldElement:
        if n >= self.n0:
            return self.tail.diff(n)
        return self.prefix[n + 1] - self.prefix[n]

    def gauge_at(self, n: int) -> Value:
        if n >= self.n0:
            return self.tail.gauge()(n)
        return valuation(self.diff(n))

    def gauge_form(self) -> tuple[list[Value], AffineExp]:
        return [self.gauge_at(n) for n in range(self.n0)], self.tail.gauge()

    def gauges(self) -> Iterator[Value]:
        n = 0
        while True:
            yield self.gauge_at(n)
            n += 1

    # -- validity -------------------------------------------------------

    def validate(self) -> None:
        """Raise NotPseudoConvergent unless the gauge is strictly increasing."""
        if self._valid:
            return
        t = self.tail
        if t.u.is_zero():
            raise NotPseudoConvergent(t.start, "tail coefficient u is zero")
        if not t.b > GroupElement.zero(self.rank):
            raise NotPseudoConvergent(t.start, f"tail exponent {t.b} is not lex-positive")
        prev: Value = None
        for n in range(self.n0 + 1):
            g = self.gauge_at(n)
            if g is INFINITY:
                raise NotPseudoConvergent(n, f"s_{n + 1} = s_{n}")
            if prev is not None and not g > prev:
                raise NotPseudoConvergent(n, f"gauge {g} does not exceed {prev}")
            prev = g
        self._valid = True

    def materialize(self, upto: int) -> "PCSeq":
        """Same sequence with the explicit prefix extended through index ``upto``."""
        if upto <= self.n0:
            return self
        return PCSeq(self.terms(upto + 1), self.tail.u, self.tail.b, validate=False)

    def replace(self, k: int, value: FieldElement, *, validate: bool = True) -> "PCSeq":
        """Sequence with the single term s_k replaced; k must lie strictly before the tail."""
        E = self.materialize(k + 1)
        prefix = list(E.prefix)
        prefix[k] = value
        return PCSeq(prefix, E.tail.u, E.tail.b, validate=validate)

    # -- closure machinery ---------------------------------------------

    @property
    def lead(self) -> int:
        """Leading index p of the tail ratio exponent b."""
        return leading_index(self.tail.b)

    def breadth(self) -> Cut:
        """Br(E) = {x : v(x) > delta_n for all n}."""
        self.validate()
        p = self.lead
        if p == 1:
            return Zero(self.rank)
        return open_coset(valuation(self.tail.u), p - 1)

    def pseudo_limit(self) -> FieldElement:
        self.validate()
        t = self.tail
        one = FieldElement.one(self.rank)
        return self.prefix[-1] + t.u * mono(1, (t.start * t.b).coords) / (one - mono(1, t.b.coords))

    def is_pseudo_limit(self, alpha: FieldElement) -> bool:
        return cut_contains(self.breadth(), alpha - self.pseudo_limit())

    def coset_prime(self, k: int) -> PrimeCut:
        """Largest prime ideal inside c_k^{-1} Br(E)."""
        self.validate()
        if k >= self.n0:
            return PrimeCut(self.lead - 1, self.rank)
        return largest_prime_in(cut_scale(self.breadth(), self.diff(k).inverse()))

    def coset_ideal(self, k: int) -> Cut:
        """c_k P_k, so that the k-th closure coset is s_k + c_k P_k."""
        return cut_scale(self.coset_prime(k).as_cut(), self.diff(k))

    def in_coset(self, k: int, alpha: FieldElement) -> bool:
        return cut_contains(self.coset_ideal(k), alpha - self.term(k))

    def gauge_index(self, g: Value) -> Optional[int]:
        """The unique k with delta_k == g, if any."""
        for n in range(self.n0):
            if self.gauge_at(n) == g:
                return n
        return affine_solve(self.tail.gauge(), g)

    def first_gauge_above(self, g: Value) -> Optional[int]:
        """Smallest n with delta_n > g, or None if g exceeds the whole gauge."""
        for n in range(self.n0):
            if self.gauge_at(n) > g:
                return n
        return affine_first_above(self.tail.gauge(), g)

    def classify(self, alpha: FieldElement) -> "Classification":
        return classify(self, alpha)

    def in_closure(self, alpha: FieldElement) -> bool:
        return in_closure(self, alpha)

    def describe(self) -> "ClosureDescription":
        return closure_describe(self)


def validate(E: PCSeq) -> None:
    E.validate()


# -- classification ------------------------------------------------------


@dataclass(frozen=True)
class PseudoLimit:
    member = True

    def __str__(self) -> str:
        return "PseudoLimit"


@dataclass(frozen=True)
class Coset:
    k: int
    member = True

    def __str__(self) -> str:
        return f"Coset({self.k})"


@dataclass(frozen=True)
class Outside:
    reason: str  # GaugeUndershoot | CosetPrimeFail | GaugeMismatch
    k: Optional[int] = None
    member = False

    def __str__(self) -> str:
        if self.k is None:
            return f"Outside({self.reason})"
        return f"Outside({self.reason}({self.k}))"


Classification = Union[PseudoLimit, Coset, Outside]


@dataclass(frozen=True)
class ClassifyReport:
    """A classification together with the valuations that decided it."""

    verdict: Classification
    v_diff: Value  # v(alpha - sigma)
    k: Optional[int] = None
    v_near: Optional[Value] = None  # v(alpha - s_k) when a gauge index matched


def classify_report(E: PCSeq, alpha: FieldElement) -> ClassifyReport:
    if alpha.rank != E.rank:
        raise RankError(f"element of rank {alpha.rank} against sequence of rank {E.rank}")
    d = alpha - E.pseudo_limit()
    vd = valuation(d)
    if contains_value(E.breadth(), vd):
        return ClassifyReport(PseudoLimit(), vd)
    k = E.gauge_index(vd)
    if k is not None:
        w = valuation(alpha - E.term(k))
        if w > vd:
            if E.in_coset(k, alpha):
                return ClassifyReport(Coset(k), vd, k, w)
            return ClassifyReport(Outside("CosetPrimeFail", k), vd, k, w)
        return ClassifyReport(Outside("GaugeMismatch", k), vd, k, w)
    k = E.first_gauge_above(vd)
    # vd is not in Br(E), so some gauge value exceeds it
    assert k is not None
    return ClassifyReport(Outside("GaugeUndershoot", k), vd, k)


def classify(E: PCSeq, alpha: FieldElement) -> Classification:
    return classify_report(E, alpha).verdict


def in_closure(E: PCSeq, alpha: FieldElement) -> bool:
    return classify(E, alpha).member


# -- closure description -------------------------------------------------


@dataclass(frozen=True)
class CosetPart:
    k: int
    center: FieldElement
    scale: FieldElement
    prime: PrimeCut

    def contains(self, alpha: FieldElement) -> bool:
        return cut_contains(cut_scale(self.prime.as_cut(), self.scale), alpha - self.center)


@dataclass(frozen=True)
class ClosureDescription:
    sigma: FieldElement
    breadth: Cut
    prefix_cosets: tuple[CosetPart, ...]
    tail_prime: PrimeCut
    seq: PCSeq = field(repr=False)

    def coset(self, k: int) -> CosetPart:
        if k < len(self.prefix_cosets):
            return self.prefix_cosets[k]
        E = self.seq
        return CosetPart(k, E.term(k), E.diff(k), self.tail_prime)

    def parts_containing(self, alpha: FieldElement, horizon: int) -> list[str]:
        """Direct scan: names of all described parts (cosets k <= horizon) holding alpha."""
        hits = []
        if cut_contains(self.breadth, alpha - self.sigma):
            hits.append("PseudoLimit")
        hits.extend(f"Coset({k})" for k in range(horizon + 1) if self.coset(k).contains(alpha))
        return hits


def closure_describe(E: PCSeq) -> ClosureDescription:
    E.validate()
    cosets = tuple(
        CosetPart(k, E.term(k), E.diff(k), E.coset_prime(k)) for k in range(E.n0)
    )
    return ClosureDescription(
        E.pseudo_limit(), E.breadth(), cosets, PrimeCut(E.lead - 1, E.rank), E
    )


# -- closure equality ------------------------------------------------------


@dataclass(frozen=True)
class EqualityCertificate:
    equal: bool
    checked: tuple[str, ...]
    failure: Optional[str] = None
    failing_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.equal


def closure_equal(E: PCSeq, F: PCSeq) -> EqualityCertificate:
    """Decide whether two pseudo-convergent sequences have the same closure.

    Equal closures hold exactly when the gauges agree term by term and each
    t_k lies in the coset s_k + c_k P_k.  Both conditions reduce to finitely
    many checks because the tails are geometric.
    """
    if E.rank != F.rank:
        raise RankError(f"rank mismatch: {E.rank} vs {F.rank}")
    E.validate()
    F.validate()
    m = max(E.n0, F.n0)
    E, F = E.materialize(m), F.materialize(m)
    checked: list[str] = []

    def fail(msg: str, k: Optional[int]) -> EqualityCertificate:
        return EqualityCertificate(False, tuple(checked), msg, k)

    # affine tails agree everywhere iff they agree at two consecutive indices
    for n in range(m + 2):
        dE, dF = E.gauge_at(n), F.gauge_at(n)
        if dE != dF:
            return fail(f"gauge mismatch at n={n}: {dE} != {dF}", n)
    checked.append(f"gauges agree (prefix through n={m - 1}, tail {E.tail.gauge().base} + n*{E.tail.b})")

    for k in range(m):
        if not E.in_coset(k, F.term(k)):
            return fail(f"t_{k} - s_{k} is not in c_{k} P_{k} ({E.coset_prime(k)})", k)
    if m:
        checked.append(f"t_k in s_k + c_k P_k for k < {m}")

    # For k >= m, t_k - s_k = A - B t^(k b) and c_k P_k = Br(E), an ideal
    # stable under multiplication by t^b.  Membership for all k >= m holds iff
    # it holds for k = m and k = m + 1 (equivalently A, B in Br(E)).
    for k in (m, m + 1):
        if not E.in_coset(k, F.term(k)):
            return fail(f"t_{k} - s_{k} is not in c_{k} P_{k} ({E.coset_prime(k)})", k)
    checked.append(f"tail differences lie in Br(E) = {E.breadth()} for all k >= {m}")
    return EqualityCertificate(True, tuple(checked))


def tail_difference_terms(E: PCSeq, F: PCSeq) -> tuple[FieldElement, FieldElement, int]:
    """(A, B, m) with t_k - s_k = A - B t^(k b) for k >= m, after aligning tails."""
    m = max(E.n0, F.n0)
    E, F = E.materialize(m), F.materialize(m)
    if E.tail.b != F.tail.b:
        raise ValueError("tails with different ratio exponents")
    one = FieldElement.one(E.rank)
    tb = mono(1, E.tail.b.coords)
    du = F.tail.u - E.tail.u
    A = (F.term(m) - E.term(m)) + du * mono(1, (m * E.tail.b).coords) / (one - tb)
    B = du / (one - tb)
    return A, B, m
