"""The Gaussian map s^t -> s dt - t ds on degree-d forms, as an exact matrix.

Twisted 1-forms on projective r-space are modelled through the Euler
sequence: a section of Omega(k) is a tuple (g_0, ..., g_r) of degree k-1
forms with sum x_i g_i = 0.  The Gaussian matrix is written in that ambient
tuple space, with row ``(i, nu)`` at position ``i * |S_{k-1}| + index(nu)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import closed_forms
from .errors import InconsistencyError
from .linalg import ExactMatrix, Subspace, kernel_basis, rank
from .polyring import Polynomial, mono_mul, partial_derivative
from .sections import VeroneseContext, _basis, _index


@dataclass(frozen=True)
class OmegaSections:
    r: int
    k: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def euler_matrix(r: int, k: int) -> ExactMatrix:
    """(g_0, ..., g_r) -> sum x_i g_i, from (r+1) copies of S_{k-1} to S_k."""
    src = _basis(r + 1, k - 1)
    dst = _index(r + 1, k)
    entries = []
    for i in range(r + 1):
        for c, g in enumerate(src):
            e = g[:i] + (g[i] + 1,) + g[i + 1 :]
            entries.append(((dst[e], i * len(src) + c), 1))
    return ExactMatrix(len(dst), (r + 1) * len(src), entries)


@lru_cache(maxsize=None)
def omega_sections(r: int, k: int) -> OmegaSections:
    if k < 1:
        raise ValueError(f"twist k must be >= 1 (got {k})")
    names = [f"x{i}" for i in range(r + 1)]
    src = _basis(r + 1, k - 1)
    labels = [f"{Polynomial.monomial(g).render(names)}*dx{i}" for i in range(r + 1) for g in src]
    space = kernel_basis(euler_matrix(r, k), labels)
    if space.dim != closed_forms.bott_h0_omega(r, k):
        raise InconsistencyError(f"h0(Omega(k)) mismatch at r={r}, k={k}")
    return OmegaSections(r, k, space)


def gaussian_column(ctx: VeroneseContext, a: int, b: int) -> dict[int, Fraction]:
    """Coordinates of t_a dt_b - t_b dt_a; defined for any ordered pair a != b."""
    if a == b:
        return {}
    ta, tb = ctx.t_basis[a], ctx.t_basis[b]
    low = _index(ctx.r + 1, 2 * ctx.d - 1)
    prod = mono_mul(ta, tb)
    col = {}
    for i in range(ctx.r + 1):
        # the i-th component is (b_i - a_i) x^{t_a + t_b - e_i}
        c = tb[i] - ta[i]
        if c:
            e = prod[:i] + (prod[i] - 1,) + prod[i + 1 :]
            col[i * len(low) + low[e]] = Fraction(c)
    return col


def pairs(ctx: VeroneseContext) -> list[tuple[int, int]]:
    return list(combinations(range(ctx.n + 1), 2))


@lru_cache(maxsize=None)
def gaussian_matrix(ctx: VeroneseContext) -> ExactMatrix:
    cols = [gaussian_column(ctx, a, b) for a, b in pairs(ctx)]
    nrows = (ctx.r + 1) * len(_basis(ctx.r + 1, 2 * ctx.d - 1))
    mat = ExactMatrix.from_columns(nrows, cols)
    euler = euler_matrix(ctx.r, 2 * ctx.d)
    for (a, b), col in zip(pairs(ctx), cols):
        if euler.apply(col):
            raise InconsistencyError(f"column ({a}, {b}) is not a twisted 1-form")
    return mat


@lru_cache(maxsize=None)
def torsion_dim_kernel(ctx: VeroneseContext) -> int:
    mat = gaussian_matrix(ctx)
    return mat.cols - rank(mat)


@dataclass(frozen=True, eq=False)
class Lambda2Element:
    """Sum of c_ab * (t_a ^ t_b) over pairs a < b."""

    context: VeroneseContext
    coefficients: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        for (a, b), c in self.coefficients.items():
            if not a < b or not c:
                raise ValueError(f"bad wedge term ({a}, {b}) -> {c}")

    def image(self) -> list[Polynomial]:
        """The form sum c_ab (t_a dt_b - t_b dt_a) as (r+1) polynomial components."""
        ctx = self.context
        t = ctx.t_polys
        comps = [Polynomial.zero(ctx.r + 1) for _ in range(ctx.r + 1)]
        for (a, b), c in self.coefficients.items():
            for i in range(ctx.r + 1):
                comps[i] = comps[i] + (t[a] * partial_derivative(t[b], i) - t[b] * partial_derivative(t[a], i)) * c
        return comps

    def is_cycle(self) -> bool:
        return not any(self.image())

    def to_json(self) -> list[dict]:
        return [{"pair": [a, b], "coeff": str(c)} for (a, b), c in sorted(self.coefficients.items())]

    def render(self) -> str:
        ctx = self.context
        parts = []
        for k, ((a, b), c) in enumerate(sorted(self.coefficients.items())):
            wedge = f"({ctx.x_label(ctx.t_basis[a])} ∧ {ctx.x_label(ctx.t_basis[b])})"
            sign = "-" if c < 0 else ("+" if k else "")
            mag = abs(c)
            body = wedge if mag == 1 else f"{mag}*{wedge}"
            parts.append(f"{sign} {body}".strip() if k else f"{sign}{body}")
        return " ".join(parts) or "0"


def torsion_witnesses(ctx: VeroneseContext) -> list[Lambda2Element]:
    """Canonical kernel basis of the Gaussian map, each re-checked by polynomial expansion."""
    space = kernel_basis(gaussian_matrix(ctx))
    idx = pairs(ctx)
    out = []
    for v in space.basis:
        w = Lambda2Element(ctx, {idx[j]: c for j, c in sorted(v.items())})
        if not w.is_cycle():
            raise InconsistencyError(f"witness {w.to_json()} does not map to zero")
        out.append(w)
    if len(out) != torsion_dim_kernel(ctx):
        raise InconsistencyError("witness count differs from kernel dimension")
    return out
