"""The value group Z^r with lexicographic order.

Elements are either finite coordinate vectors or the sentinel INFINITY
(the value of 0).  Convex subgroups of Z^r-lex form the chain

    Z^r = D_0 > D_1 > ... > D_r = {0},   D_j = {g : g_1 = ... = g_j = 0},

and these are in bijection with the prime ideals of the valuation ring.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Optional, Union


class RankError(ValueError):
    """Raised when objects of different rank are combined."""


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@total_ordering
class _Infinity:
    """Sentinel strictly above every finite group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_infinite = True

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("pcvclosure.INFINITY")

    def __lt__(self, other) -> bool:
        if other is self or isinstance(other, GroupElement):
            return False
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, GroupElement):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GroupElement):
            return self
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, GroupElement):
            raise ArithmeticError("cannot subtract infinity from a finite element")
        return NotImplemented

    def __mul__(self, lam):
        if not isinstance(lam, int):
            return NotImplemented
        if lam < 1:
            raise ArithmeticError("infinity can only be scaled by a positive integer")
        return self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@total_ordering
@dataclass(frozen=True)
class GroupElement:
    """A finite element of Z^r; comparisons are lexicographic."""

    coords: tuple[int, ...]

    is_infinite = False

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise RankError("rank must be at least 1")

    @classmethod
    def zero(cls, rank: int) -> "GroupElement":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, i: int) -> "GroupElement":
        """The standard basis vector e_i (1-based)."""
        if not 1 <= i <= rank:
            raise IndexError(f"basis index {i} outside 1..{rank}")
        return cls(tuple(int(k == i) for k in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "GroupElement") -> None:
        if len(other.coords) != len(self.coords):
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupElement):
            self._check(other)
            return self.coords == other.coords
        if other is INFINITY:
            return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other) -> bool:
        if other is INFINITY:
            return True
        if isinstance(other, GroupElement):
            self._check(other)
            return self.coords < other.coords
        return NotImplemented

    def __add__(self, other):
        if other is INFINITY:
            return INFINITY
        if isinstance(other, GroupElement):
            self._check(other)
            return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)))
        return NotImplemented

    def __sub__(self, other):
        if other is INFINITY:
            raise ArithmeticError("cannot subtract infinity from a finite element")
        if isinstance(other, GroupElement):
            self._check(other)
            return GroupElement(tuple(a - b for a, b in zip(self.coords, other.coords)))
        return NotImplemented

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.coords))

    def __mul__(self, lam):
        if not isinstance(lam, int):
            return NotImplemented
        return GroupElement(tuple(lam * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self) -> str:
        return f"GroupElement({self.coords!r})"

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def is_zero(self) -> bool:
        return not any(self.coords)


Value = Union[GroupElement, _Infinity]


def lex_cmp(a: Value, b: Value) -> Ordering:
    if a == b:
        return Ordering.EQ
    return Ordering.LT if a < b else Ordering.GT


def add(a: Value, b: Value) -> Value:
    return a + b


def sub(a: Value, b: Value) -> Value:
    return a - b


def scalar_mul(lam: int, g: Value) -> Value:
    return lam * g


def leading_index(g: GroupElement) -> Optional[int]:
    """1-based position of the first nonzero coordinate, None for zero."""
    for i, c in enumerate(g.coords, start=1):
        if c:
            return i
    return None


def in_convex(g: GroupElement, j: int) -> bool:
    """Whether g lies in the convex subgroup D_j."""
    return not any(g.coords[:j])


def prefix_sign(g: Value, j: int) -> int:
    """Sign of the first j coordinates of g read as a lex vector (inf -> +1)."""
    if g is INFINITY:
        return 1
    for c in g.coords[:j]:
        if c:
            return 1 if c > 0 else -1
    return 0


def exceeds_convex(g: Value, j: int) -> bool:
    """g > D_j, i.e. the first j coordinates of g are lex-positive."""
    return prefix_sign(g, j) > 0


def truncate(g: GroupElement, j: int) -> GroupElement:
    """Zero out coordinates j+1..r (the representative of g + D_j)."""
    return GroupElement(g.coords[:j] + (0,) * (g.rank - j))


@dataclass(frozen=True)
class AffineExp:
    """The exponent sequence n -> base + n*step for n >= start."""

    base: GroupElement
    step: GroupElement
    start: int = 0

    def __post_init__(self):
        self.base._check(self.step)
        if self.start < 0:
            raise ValueError("start must be nonnegative")

    def __call__(self, n: int) -> GroupElement:
        return affine_eval(self, n)


def affine_eval(e: AffineExp, n: int) -> GroupElement:
    if n < e.start:
        raise ValueError(f"n={n} is below the start index {e.start}")
    return e.base + n * e.step


def _require_positive_step(e: AffineExp) -> int:
    p = leading_index(e.step)
    if p is None or e.step.coords[p - 1] < 0:
        raise ValueError(f"step {e.step} is not lex-positive")
    return p


def affine_solve(e: AffineExp, g: Value) -> Optional[int]:
    """The unique n >= start with base + n*step == g, or None."""
    p = _require_positive_step(e)
    if g is INFINITY:
        return None
    diff = g - e.base
    q, rem = divmod(diff.coords[p - 1], e.step.coords[p - 1])
    if rem or q < e.start or q * e.step != diff:
        return None
    return q


def affine_first_above(e: AffineExp, g: Value) -> Optional[int]:
    """Smallest n >= start with base + n*step > g, or None if there is none."""
    p = _require_positive_step(e)
    if g is INFINITY:
        return None
    diff = g - e.base
    head = prefix_sign(diff, p - 1)
    if head < 0:
        return e.start
    if head > 0:
        return None
    sp = e.step.coords[p - 1]
    q, rem = divmod(diff.coords[p - 1], sp)
    if rem == 0 and tuple(q * c for c in e.step.coords[p:]) <= diff.coords[p:]:
        q += 1
    elif rem:
        q += 1
    return max(q, e.start)


def parse_group_element(coords: Iterable[int]) -> GroupElement:
    return GroupElement(tuple(int(c) for c in coords))
