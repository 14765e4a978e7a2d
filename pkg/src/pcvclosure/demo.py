"""The rank >= 2 counterexample showing polynomial closure is not topological.

With t = t_r and p = t_1, E = {t^(n+1)} and E' = {t^(n+2)} share breadth
ideal P (the largest prime strictly inside tV) and pseudo-limit 0, yet t + p
lies in the closure of E but neither in the closure of E' nor in {t}.
A topological closure would satisfy cl(E) = cl(E') u cl({t}).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import cut_contains, cut_eq, largest_prime_strictly_in, principal
from .lexgroup import GroupElement
from .pcvseq import Coset, Outside, PCSeq, classify, closure_equal, in_closure
from .regbasis import oracle_in_closure
from .valfield import FieldElement, mono


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    observed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def demo_sequences(rank: int) -> tuple[PCSeq, PCSeq, FieldElement, FieldElement]:
    """(E, E', t, p) for the given rank."""
    if rank < 2:
        raise ValueError("the counterexample needs rank >= 2")
    t = FieldElement.variable(rank, rank)
    p = FieldElement.variable(rank, 1)
    b = GroupElement.unit(rank, rank)
    E = PCSeq([t], t**2 - t, b)
    E_shift = PCSeq([t**2], t**3 - t**2, b)
    return E, E_shift, t, p


def _samples(rank: int, t: FieldElement, p: FieldElement) -> list[FieldElement]:
    out = []
    for k in range(4):
        for e1 in (0, 1, 2):
            for e2 in (-3, 0, 2):
                g = [0] * rank
                g[0] = e1
                g[-1] += e2
                if not any(g):
                    continue
                out.append(t**k + mono(1, g))
                out.append(t**k + mono(-2, g) * t)
    out.extend([t, t**3, p, p / t**4, FieldElement.one(rank), t + t**2])
    return out


def nontopological(rank: int = 2, horizon: int = 30) -> list[Check]:
    E, E_shift, t, p = demo_sequences(rank)
    alpha = t + p
    zero = FieldElement.zero(rank)
    P = largest_prime_strictly_in(principal(t))
    checks = [
        Check("largest prime strictly inside tV", f"P_{rank - 1}", str(P)),
        Check("p lies in P", "True", str(cut_contains(P.as_cut(), p))),
        Check("Br(E) = P", "True", str(cut_eq(E.breadth(), P.as_cut()))),
        Check("Br(E') = P", "True", str(cut_eq(E_shift.breadth(), P.as_cut()))),
        Check("pseudo-limit of E", "0", str(E.pseudo_limit())),
        Check("pseudo-limit of E'", "0", str(E_shift.pseudo_limit())),
        Check("E and E' share pseudo-limits", "True",
              str(E.is_pseudo_limit(E_shift.pseudo_limit()) and E_shift.is_pseudo_limit(zero))),
        Check("coset primes of E equal P (k < 5)", "True",
              str(all(E.coset_prime(k) == P for k in range(5)))),
        Check("classify(E, t+p)", str(Coset(0)), str(classify(E, alpha))),
        Check("classify(E', t+p)", str(Outside("GaugeUndershoot", 0)), str(classify(E_shift, alpha))),
        Check("t+p in closure of {t}", "False", str(alpha == t)),
        Check("oracle(E', t+p, N=5)",
              f"Fail(1) with v(H_1) = {-GroupElement.unit(rank, rank)}",
              str(oracle_in_closure(E_shift, alpha, 5))),
        Check(f"oracle(E, t+p, N={horizon})", f"Pass(N={horizon})", str(oracle_in_closure(E, alpha, horizon))),
        Check("closure_equal(E, E')", "False", str(bool(closure_equal(E, E_shift)))),
    ]
    # cl(E) = cl(E') u (t + P), disjointly, on a sample of elements
    agree = True
    for x in _samples(rank, t, p):
        in_coset = cut_contains(P.as_cut(), x - t)
        inE, inE2 = in_closure(E, x), in_closure(E_shift, x)
        if inE != (inE2 or in_coset) or (inE2 and in_coset):
            agree = False
    checks.append(Check("cl(E) = cl(E') disjoint-union (t+P) on samples", "True", str(agree)))
    return checks
