"""Polynomial closure of pseudo-convergent sequences in valuation domains of finite rank.

The valued field is Q(t1, ..., tr) with the lexicographic monomial valuation
onto Z^r; sequences are an explicit prefix plus a geometric tail.
"""

from .ideals import (
    ClosedPrincipal,
    OpenCoset,
    PrimeCut,
    Zero,
    cut_contains,
    cut_eq,
    cut_scale,
    cut_subset,
    largest_prime_in,
    largest_prime_oracle,
    largest_prime_strictly_in,
    open_coset,
)
from .lexgroup import INFINITY, AffineExp, GroupElement, lex_cmp, leading_index
from .parsing import ParseError, parse_expr, parse_kpoly
from .pcvseq import (
    Coset,
    NotPseudoConvergent,
    Outside,
    PCSeq,
    PseudoLimit,
    classify,
    closure_describe,
    closure_equal,
    in_closure,
)
from .regbasis import expand_in_basis, hn_build, is_integer_valued, oracle_in_closure
from .valfield import FieldElement, KPoly, MPoly, in_M, in_V, is_unit, mono, valuation

__version__ = "0.1.0"

__all__ = [
    "AffineExp",
    "classify",
    "ClosedPrincipal",
    "closure_describe",
    "closure_equal",
    "Coset",
    "cut_contains",
    "cut_eq",
    "cut_scale",
    "cut_subset",
    "expand_in_basis",
    "FieldElement",
    "GroupElement",
    "hn_build",
    "in_closure",
    "in_M",
    "in_V",
    "INFINITY",
    "is_integer_valued",
    "is_unit",
    "KPoly",
    "largest_prime_in",
    "largest_prime_oracle",
    "largest_prime_strictly_in",
    "leading_index",
    "lex_cmp",
    "mono",
    "MPoly",
    "NotPseudoConvergent",
    "open_coset",
    "OpenCoset",
    "oracle_in_closure",
    "Outside",
    "parse_expr",
    "parse_kpoly",
    "ParseError",
    "PCSeq",
    "PrimeCut",
    "PseudoLimit",
    "valuation",
    "Zero",
]
