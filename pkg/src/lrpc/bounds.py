"""Closed-form failure-probability bounds and operation-count estimates.

All three bound terms have integer exponents (λ(λ+1)/2 is an integer), so they
are evaluated exactly as fractions before conversion to float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .code import CodeParams


@dataclass(frozen=True)
class BoundReport:
    t: int
    u: int
    term_product: float       # Pr[dim(FE) < λt] <= t q^(λt - m)
    term_intersection: float  # Pr[∩ S'_l != E] <= t q^(λt(λ+1)/2 - m)
    term_syndrome: float      # Pr[dim(S') < λt] <= q^(λt - u(n-k))
    union: float
    log2_terms: tuple[float, float, float]
    log2_union: float

    def as_row(self) -> dict:
        return {
            "t": self.t,
            "term_product": self.term_product,
            "term_intersection": self.term_intersection,
            "term_syndrome": self.term_syndrome,
            "union": self.union,
        }


def _log2(x: Fraction) -> float:
    if x == 0:
        return -math.inf
    return math.log2(x.numerator) - math.log2(x.denominator)


def bound_terms(params: CodeParams, t: int) -> tuple[Fraction, Fraction, Fraction]:
    """Exact values of the three failure-event bounds for error rank t."""
    if t < 0:
        raise ValueError("error rank must be non-negative")
    q = Fraction(params.field.q)
    lam, m = params.lam, params.field.m
    lam_t = lam * t
    product = t * q ** (lam_t - m)
    intersection = t * q ** (lam_t * (lam + 1) // 2 - m)
    syndrome = q ** (lam_t - params.u * params.r)
    return product, intersection, syndrome


def union_bound(params: CodeParams, t: int) -> BoundReport:
    terms = bound_terms(params, t)
    total = min(Fraction(1), sum(terms, Fraction(0)))
    return BoundReport(
        t=t,
        u=params.u,
        term_product=float(terms[0]),
        term_intersection=float(terms[1]),
        term_syndrome=float(terms[2]),
        union=float(total),
        log2_terms=tuple(_log2(x) for x in terms),
        log2_union=_log2(total),
    )


def success_probability(params: CodeParams, t: int) -> float:
    """Lower bound 1 - union on the probability of decoding an error of rank t."""
    return 1.0 - union_bound(params, t).union


@dataclass(frozen=True)
class Complexity:
    syndrome_space: int
    support_recovery: int
    error_recovery: int

    @property
    def total(self) -> int:
        return self.syndrome_space + self.support_recovery + self.error_recovery


def complexity_estimate(params: CodeParams, t: int, *, interleaved: bool = True) -> Complexity:
    """Leading-order F_q operation counts of the three decoding steps.

    ``interleaved=False`` gives the counts for a single LRPC code of length
    u*n and dimension u*k over the same field.
    """
    n, m, lam, u = params.n, params.field.m, params.lam, params.u
    factor = u if interleaved else u * u
    return Complexity(
        syndrome_space=factor * n * n * m * m,
        support_recovery=4 * t * t * lam * lam * m,
        error_recovery=factor * n * n * t * t,
    )
