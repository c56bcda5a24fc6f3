"""X_{r,d} as the cyclic quotient of affine (r+1)-space by scalar d-th roots of unity."""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import closed_forms
from .errors import InconsistencyError
from .gaussian import torsion_dim_kernel
from .linalg import ExactMatrix, rank
from .polyring import Monomial, monomial_basis
from .sections import make_context


class MMPClass(enum.Enum):
    SMOOTH = "Smooth"
    TERMINAL = "Terminal"
    CANONICAL_NOT_TERMINAL = "CanonicalNotTerminal"
    LOG_TERMINAL_NOT_CANONICAL = "LogTerminalNotCanonical"

    @property
    def short_name(self) -> str:
        return _SHORT[self]


_SHORT = {
    MMPClass.SMOOTH: "smooth",
    MMPClass.TERMINAL: "terminal",
    MMPClass.CANONICAL_NOT_TERMINAL: "canonical",
    MMPClass.LOG_TERMINAL_NOT_CANONICAL: "log terminal",
}


@dataclass(frozen=True)
class SingularityReport:
    r: int
    d: int
    dim: int
    embdim: int
    index: int
    gorenstein: bool
    discrepancy: Fraction
    mmp_class: MMPClass
    has_torsion: bool
    torsion_dim: int | None
    has_cotorsion: bool
    cotorsion_excess: int

    @property
    def name(self) -> str:
        return f"X_{{{self.r},{self.d}}}"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "dim": self.dim,
            "embdim": self.embdim,
            "index": self.index,
            "gorenstein": self.gorenstein,
            "discrepancy": str(self.discrepancy),
            "mmp_class": self.mmp_class.value,
            "has_torsion": self.has_torsion,
            "torsion_dim": self.torsion_dim,
            "has_cotorsion": self.has_cotorsion,
            "cotorsion_excess": self.cotorsion_excess,
        }

    def table_row(self) -> tuple[str, int, str, str, str, str]:
        yn = {True: "yes", False: "no"}
        return (
            self.name,
            self.dim,
            self.mmp_class.short_name,
            yn[self.gorenstein],
            yn[self.has_torsion],
            yn[self.has_cotorsion],
        )


REPORT_FIELDS = tuple(SingularityReport.__dataclass_fields__)

# (r, d) -> (dim, type, Gorenstein, torsion, cotorsion) as published
REFERENCE_TABLE: dict[tuple[int, int], tuple[int, str, str, str, str]] = {
    (1, 2): (2, "canonical", "yes", "no", "yes"),
    (1, 3): (2, "log terminal", "no", "yes", "yes"),
    (2, 2): (3, "terminal", "no", "no", "yes"),
    (2, 3): (3, "canonical", "yes", "yes", "yes"),
    (3, 2): (4, "terminal", "yes", "no", "yes"),
    (3, 3): (4, "terminal", "no", "yes", "yes"),
    (5, 3): (6, "terminal", "yes", "yes", "yes"),
}
REFERENCE_LABELS = {(1, 2): "X_{1,2} (A1)"}


def _validate(r: int, d: int) -> None:
    if r < 1 or d < 1:
        raise ValueError(f"need r >= 1 and d >= 1 (got r={r}, d={d})")


def mmp_class(r: int, d: int) -> MMPClass:
    if d == 1:
        return MMPClass.SMOOTH
    if r + 1 > d:
        return MMPClass.TERMINAL
    if r + 1 == d:
        return MMPClass.CANONICAL_NOT_TERMINAL
    return MMPClass.LOG_TERMINAL_NOT_CANONICAL


def discrepancy(r: int, d: int) -> Fraction:
    return Fraction(r + 1, d) - 1


def index(r: int, d: int) -> int:
    return d // gcd(r + 1, d)


@dataclass(frozen=True)
class InvariantGenerators:
    """Invariant 1-forms g * dx_i with deg g = d - 1, enumerated on demand."""

    r: int
    d: int
    monomials: tuple[Monomial, ...]

    @property
    def count(self) -> int:
        return (self.r + 1) * len(self.monomials)

    @property
    def generators(self) -> Iterator[tuple[Monomial, int]]:
        for i in range(self.r + 1):
            for g in self.monomials:
                yield g, i

    def is_invariant(self, g: Monomial, i: int) -> bool:
        # weight of g * dx_i under the scalar action is deg(g) + 1
        return (sum(g) + 1) % self.d == 0

    def certify_minimal(self) -> bool:
        """Independence in the lowest degree, and no invariant forms below it.

        Generators sit in x-degree d; the invariant ring starts in degree d,
        so products with the maximal ideal start in degree 2d and cannot
        contribute to a minimal generating set in degree d.
        """
        gens = list(self.generators)
        if not all(self.is_invariant(g, i) for g, i in gens):
            return False
        pos = {g: k for k, g in enumerate(self.monomials)}
        coords = ExactMatrix(
            self.count, self.count, (((k, i * len(self.monomials) + pos[g]), 1) for k, (g, i) in enumerate(gens))
        )
        independent = rank(coords) == self.count
        # smallest x-degree deg(g) + 1 admitting an invariant form
        lowest = next(e for e in range(1, self.d + 1) if e % self.d == 0)
        multiples_start = lowest + self.d
        return independent and lowest == self.d and multiples_start > lowest


def invariant_generators(r: int, d: int) -> InvariantGenerators:
    _validate(r, d)
    gens = InvariantGenerators(r, d, tuple(monomial_basis(r + 1, d - 1)))
    if gens.count != closed_forms.invariant_generator_count(r, d):
        raise InconsistencyError(f"invariant generator count mismatch at r={r}, d={d}")
    return gens


def cotorsion_decision(r: int, d: int) -> tuple[bool, int]:
    excess = invariant_generators(r, d).count - closed_forms.embedding_dim(r, d)
    if excess != closed_forms.cotorsion_excess(r, d):
        raise InconsistencyError(f"cotorsion excess mismatch at r={r}, d={d}")
    return excess > 0, excess


def classify(r: int, d: int, compute_torsion: bool = False) -> SingularityReport:
    """Full report for X_{r,d}; ``compute_torsion`` adds the Gaussian-kernel dimension."""
    _validate(r, d)
    a = discrepancy(r, d)
    idx = index(r, d)
    gorenstein = (r + 1) % d == 0
    if gorenstein != (a.denominator == 1) or (idx * a).denominator != 1:
        raise InconsistencyError(f"index/discrepancy mismatch at r={r}, d={d}")
    has_cotorsion, excess = cotorsion_decision(r, d)
    torsion_dim = None
    if compute_torsion:
        if d == 1:
            torsion_dim = 0
        else:
            torsion_dim = torsion_dim_kernel(make_context(r, d))
            if (torsion_dim > 0) != (d >= 3):
                raise InconsistencyError(f"torsion dimension {torsion_dim} contradicts d={d}")
    return SingularityReport(
        r=r,
        d=d,
        dim=r + 1,
        embdim=closed_forms.embedding_dim(r, d),
        index=idx,
        gorenstein=gorenstein,
        discrepancy=a,
        mmp_class=mmp_class(r, d),
        has_torsion=d >= 3,
        torsion_dim=torsion_dim,
        has_cotorsion=has_cotorsion,
        cotorsion_excess=excess,
    )
