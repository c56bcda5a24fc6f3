"""Closed-form dimension counts for Veronese cones, in exact integers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InconsistencyError


@dataclass(frozen=True)
class FormulaInputs:
    r: int
    d: int
    m: int = 0

    def __post_init__(self):
        if self.r < 1 or self.d < 1 or self.m < 0:
            raise ValueError(f"need r >= 1, d >= 1, m >= 0 (got r={self.r}, d={self.d}, m={self.m})")


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``.

    Negative ``n`` uses the polynomial extension ``n(n-1)...(n-k+1)/k!``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    return (-1) ** k * comb(k - n - 1, k)


def h0_ideal(r: int, d: int, m: int) -> int:
    """Dimension of the degree-m piece of the Veronese ideal."""
    FormulaInputs(r, d, m)
    return binom(binom(d + r, r) + m - 1, m) - binom(m * d + r, r)


def conormal_lower_bound(r: int, d: int, m: int) -> int:
    FormulaInputs(r, d, m)
    if m < 1:
        raise ValueError("conormal bound needs m >= 1")
    return (
        binom(d + r, r) * binom((m - 1) * d + r, r)
        - binom(m * d + r, r)
        - (d * m - 1) * binom(r + d * m - 1, m * d)
    )


def bott_h0_omega(r: int, k: int) -> int:
    """h^0 of twisted 1-forms Omega(k) on projective r-space, for k >= 1."""
    if r < 1:
        raise ValueError("need r >= 1")
    if k < 1:
        # only verified for positive twists
        raise ValueError(f"twist k={k} is outside the supported range k >= 1")
    return (k - 1) * binom(r + k - 1, k)


def toshow_lhs(r: int, d: int) -> int:
    """Left-hand side of the positivity estimate for degree-2 conormal excess (may be negative)."""
    FormulaInputs(r, d)
    n1 = binom(d + r, r)
    return n1 * n1 - n1 - 2 * (2 * d - 1) * binom(r + 2 * d - 1, 2 * d)


def embedding_dim(r: int, d: int) -> int:
    FormulaInputs(r, d)
    return binom(r + d, d)


def invariant_generator_count(r: int, d: int) -> int:
    FormulaInputs(r, d)
    return (r + 1) * binom(d + r - 1, d - 1)


def cotorsion_excess(r: int, d: int) -> int:
    """Invariant 1-form generators minus embedding dimension."""
    excess = invariant_generator_count(r, d) - embedding_dim(r, d)
    num = r * (d - 1) * binom(d + r, d)
    if num % (d + r) or num // (d + r) != excess:
        raise InconsistencyError(f"cotorsion closed forms disagree at r={r}, d={d}")
    return excess
