"""Graded pieces of the Kähler differentials of the Veronese cone, computed on the cone.

The coordinate ring R is identified degree-wise with S_{md} by substitution,
so an element of (R dy_j)_m is a degree-(m-1)d form in x times dy_j.
Relations are the R-multiples of df over the quadric generators of the
ideal.  Everything is homogeneous for the x-multidegree, and the torsion
search runs one multidegree block at a time: the coordinates and the
relations in multidegree delta depend only on delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InconclusiveError, InconsistencyError
from .linalg import ExactMatrix, Subspace, kernel_basis, rank, row_space
from .polyring import Monomial, mono_divides, mono_mul, partial_derivative
from .sections import VeroneseContext, _basis, _index, quadric_relations

DEFAULT_WINDOW = 3
DEFAULT_MAX_DEGREE = 8


@dataclass(frozen=True)
class GradedModulePiece:
    context: VeroneseContext
    degree: int
    ambient_labels: tuple[str, ...]
    relation_space: Subspace
    quotient_dim: int

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_labels)


@dataclass(frozen=True)
class ContractionData:
    piece: GradedModulePiece
    matrix: ExactMatrix
    kernel: Subspace  # inside the ambient space; contains the relations

    @property
    def n_dim(self) -> int:
        """Dimension of N_m, the kernel of the contraction on the quotient."""
        return self.kernel.dim - self.piece.relation_space.dim


@lru_cache(maxsize=None)
def _differentials(ctx: VeroneseContext) -> tuple[tuple[Monomial, dict[int, Fraction]], ...]:
    """For each quadric f: its x-multidegree and the coefficients of dy_j in df."""
    out = []
    for f in quadric_relations(ctx):
        degs = {ctx.pullback_exponent(m) for m in f.terms}
        if len(degs) != 1:
            raise InconsistencyError(f"quadric {f.render(ctx.y_names)} is not multihomogeneous")
        (deg,) = degs
        coeffs: dict[int, Fraction] = {}
        for j in range(ctx.n + 1):
            c = sum(partial_derivative(f, j).terms.values(), Fraction(0))
            if c:
                coeffs[j] = c
        out.append((deg, coeffs))
    return tuple(out)


def _coord_index(ctx: VeroneseContext, m: int) -> tuple[tuple[Monomial, ...], dict[Monomial, int]]:
    src = _basis(ctx.r + 1, (m - 1) * ctx.d)
    return src, _index(ctx.r + 1, (m - 1) * ctx.d)


@lru_cache(maxsize=None)
def omega_piece(ctx: VeroneseContext, m: int) -> GradedModulePiece:
    if m < 1:
        raise ValueError(f"internal degree must be >= 1 (got {m})")
    diffs = _differentials(ctx)
    src, idx = _coord_index(ctx, m)
    size = len(src)
    labels = tuple(
        (f"{ctx.x_label(mu)}*dy{j}" if any(mu) else f"dy{j}") for j in range(ctx.n + 1) for mu in src
    )
    relations = []
    if m >= 2:
        for nu in _basis(ctx.r + 1, (m - 2) * ctx.d):
            for deg, coeffs in diffs:
                shifted = mono_mul(nu, deg)
                vec = {}
                for j, c in coeffs.items():
                    mu = tuple(a - b for a, b in zip(shifted, ctx.t_basis[j]))
                    vec[j * size + idx[mu]] = c
                relations.append(vec)
    space = row_space(relations, len(labels))
    return GradedModulePiece(ctx, m, labels, space, len(labels) - space.dim)


@lru_cache(maxsize=None)
def contraction(ctx: VeroneseContext, m: int) -> ContractionData:
    """Contraction with the Euler field, sum g_j dy_j -> sum g_j y_j in R_m."""
    piece = omega_piece(ctx, m)
    src, _ = _coord_index(ctx, m)
    dst = _index(ctx.r + 1, m * ctx.d)
    entries = [
        ((dst[mono_mul(mu, t)], j * len(src) + k), 1)
        for j, t in enumerate(ctx.t_basis)
        for k, mu in enumerate(src)
    ]
    mat = ExactMatrix(len(dst), piece.ambient_dim, entries)
    for v in piece.relation_space.basis:
        if mat.apply(v):
            raise InconsistencyError(f"contraction does not kill a relation in degree {m}")
    kernel = kernel_basis(mat, piece.ambient_labels)
    data = ContractionData(piece, mat, kernel)
    rk = rank(mat)
    if rk != mat.rows:
        raise InconsistencyError(f"contraction onto R_{m} is not surjective")
    if data.n_dim != piece.quotient_dim - rk:
        raise InconsistencyError("dim N_m bookkeeping failed")
    return data


# -- multidegree blocks ----------------------------------------------------


@lru_cache(maxsize=None)
def _block_coords(ctx: VeroneseContext, delta: Monomial) -> tuple[int, ...]:
    return tuple(j for j, t in enumerate(ctx.t_basis) if mono_divides(t, delta))


@lru_cache(maxsize=None)
def _block_relations(ctx: VeroneseContext, delta: Monomial) -> Subspace:
    coords = _block_coords(ctx, delta)
    pos = {j: k for k, j in enumerate(coords)}
    vecs = [
        {pos[j]: c for j, c in coeffs.items()}
        for deg, coeffs in _differentials(ctx)
        if mono_divides(deg, delta)
    ]
    return row_space(vecs, len(coords))


def block_quotient_dim(ctx: VeroneseContext, delta: Monomial) -> int:
    return len(_block_coords(ctx, delta)) - _block_relations(ctx, delta).dim


def _killed_dim(ctx: VeroneseContext, delta: Monomial, k: int) -> int:
    """dim of {v in N at delta : v * lambda lies in the relations for every lambda of degree kd}."""
    coords = _block_coords(ctx, delta)
    if not coords:
        return 0
    degree = sum(delta)
    entries = [((0, c), 1) for c in range(len(coords))]  # contraction to R at delta
    row = 1
    for lam in _basis(ctx.r + 1, k * ctx.d):
        target = mono_mul(delta, lam)
        if sum(target) != degree + k * ctx.d:
            raise InconsistencyError("multiplication map breaks degree bookkeeping")
        tpos = {j: p for p, j in enumerate(_block_coords(ctx, target))}
        rel = _block_relations(ctx, target)
        residual_rows: dict[int, int] = {}
        for c, j in enumerate(coords):
            for p, x in rel.reduce({tpos[j]: 1}).items():
                if p not in residual_rows:
                    residual_rows[p] = row
                    row += 1
                entries.append(((residual_rows[p], c), x))
    kernel = len(coords) - rank(ExactMatrix(row, len(coords), entries))
    dim = kernel - _block_relations(ctx, delta).dim
    if dim < 0:
        raise InconsistencyError(f"relations escaped the torsion kernel at {delta}")
    return dim


def killed_dim(ctx: VeroneseContext, m: int, k: int) -> int:
    """Elements of N_m sent to zero by every degree-k monomial of R."""
    return sum(_killed_dim(ctx, delta, k) for delta in _basis(ctx.r + 1, m * ctx.d))


def torsion_direct(
    ctx: VeroneseContext,
    m: int,
    window: int = DEFAULT_WINDOW,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> int:
    """Torsion of (Omega_R)_m by saturation of the annihilated subspaces.

    Returns the stable value at the first ``k <= window`` with equal
    kernels at exponents k and k+1.  Raises InconclusiveError when that
    comparison would need internal degree above ``max_degree``.
    """
    if m < 1 or window < 1:
        raise ValueError("need m >= 1 and window >= 1")
    if m > max_degree:
        raise InconclusiveError(f"internal degree {m} exceeds max_degree {max_degree}")
    prev = None
    for k in range(1, window + 2):
        if m + k > max_degree:
            break
        cur = killed_dim(ctx, m, k)
        if prev is not None and cur == prev:
            return prev
        if k > window:
            break
        prev = cur
    raise InconclusiveError(
        f"torsion in degree {m} did not stabilise within window {window} / max degree {max_degree}"
    )


def total_torsion_direct(
    ctx: VeroneseContext,
    degree_range: range,
    window: int = DEFAULT_WINDOW,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> int:
    return sum(torsion_direct(ctx, m, window, max_degree) for m in degree_range)
