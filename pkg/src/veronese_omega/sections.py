"""Graded section spaces on the ambient projective space of a Veronese embedding.

Coordinates: ``x_0..x_r`` on the source, ``y_0..y_n`` on the target, with
``y_j`` pulling back to the j-th degree-d monomial ``t_j``.  Every space here
is cut out by linear conditions on monomial coefficients, so dimensions come
from exact elimination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from . import closed_forms
from .errors import GenerationError, InconsistencyError
from .linalg import ExactMatrix, Subspace, is_surjective, kernel_basis, span_dim
from .polyring import (
    Monomial,
    Polynomial,
    default_names,
    mono_mul,
    monomial_basis,
    render_monomial,
)


@lru_cache(maxsize=None)
def _basis(nvars: int, degree: int) -> tuple[Monomial, ...]:
    return tuple(monomial_basis(nvars, degree))


@lru_cache(maxsize=None)
def _index(nvars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis(nvars, degree))}


@dataclass(frozen=True)
class VeroneseContext:
    r: int
    d: int
    t_basis: tuple[Monomial, ...] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.t_basis) - 1

    @property
    def nvars(self) -> int:
        return self.r + 1

    @cached_property
    def x_names(self) -> list[str]:
        return default_names(self.r + 1, "x")

    @cached_property
    def y_names(self) -> list[str]:
        return default_names(self.n + 1, "y")

    @cached_property
    def t_polys(self) -> list[Polynomial]:
        return [Polynomial.monomial(t) for t in self.t_basis]

    def pullback_exponent(self, alpha: Monomial) -> Monomial:
        """x-exponent of the substitution of the y-monomial ``alpha``."""
        out = (0,) * (self.r + 1)
        for j, a in enumerate(alpha):
            if a:
                out = tuple(o + a * t for o, t in zip(out, self.t_basis[j]))
        return out

    def x_label(self, m: Monomial) -> str:
        return render_monomial(m, self.x_names)

    def y_label(self, m: Monomial) -> str:
        return render_monomial(m, self.y_names)


@lru_cache(maxsize=None)
def make_context(r: int, d: int) -> VeroneseContext:
    if r < 1 or d < 1:
        raise ValueError(f"need r >= 1 and d >= 1 (got r={r}, d={d})")
    ctx = VeroneseContext(r, d, _basis(r + 1, d))
    assert len(ctx.t_basis) == closed_forms.binom(r + d, d)
    return ctx


class SectionKind(enum.Enum):
    IDEAL = "Ideal"
    IDEAL_SQUARED = "IdealSquared"
    CONORMAL = "Conormal"


@dataclass(frozen=True)
class SectionSpace:
    context: VeroneseContext
    twist: int
    kind: SectionKind
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def _check_twist(m: int) -> None:
    if m < 1:
        raise ValueError(f"twist m must be >= 1 (got {m})")


@lru_cache(maxsize=None)
def multiplication_matrix(ctx: VeroneseContext, m: int) -> ExactMatrix:
    """Sym^m(S_d) -> S_{md} on monomial bases; raises if not surjective."""
    _check_twist(m)
    cols = _basis(ctx.n + 1, m)
    rows = _index(ctx.r + 1, m * ctx.d)
    a = ExactMatrix(len(rows), len(cols), (((rows[ctx.pullback_exponent(al)], k), 1) for k, al in enumerate(cols)))
    if not is_surjective(a):
        raise InconsistencyError(f"Sym^{m}(S_{ctx.d}) -> S_{m * ctx.d} is not surjective")
    return a


@lru_cache(maxsize=None)
def ideal_piece(ctx: VeroneseContext, m: int) -> SectionSpace:
    a = multiplication_matrix(ctx, m)
    labels = [ctx.y_label(al) for al in _basis(ctx.n + 1, m)]
    return SectionSpace(ctx, m, SectionKind.IDEAL, kernel_basis(a, labels))


def _binomial_pairs(ctx: VeroneseContext) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    groups: dict[Monomial, list[tuple[int, int]]] = {}
    for a in range(ctx.n + 1):
        for b in range(a, ctx.n + 1):
            groups.setdefault(mono_mul(ctx.t_basis[a], ctx.t_basis[b]), []).append((a, b))
    out = []
    for pairs in groups.values():
        first = pairs[0]
        out.extend((first, other) for other in pairs[1:])
    out.sort()
    return out


def _quadric(ctx: VeroneseContext, p: tuple[int, int], q: tuple[int, int]) -> Polynomial:
    def mono(a: int, b: int) -> Monomial:
        e = [0] * (ctx.n + 1)
        e[a] += 1
        e[b] += 1
        return tuple(e)

    return Polynomial(ctx.n + 1, {mono(*p): 1}) - Polynomial(ctx.n + 1, {mono(*q): 1})


@lru_cache(maxsize=None)
def quadric_relations(ctx: VeroneseContext) -> tuple[Polynomial, ...]:
    """Binomials y_A y_B - y_C y_D with t_A t_B = t_C t_D, checked to generate I in degrees 2, 3."""
    quads = tuple(_quadric(ctx, p, q) for p, q in _binomial_pairs(ctx))
    ny = ctx.n + 1
    for f in quads:
        if not substitute_vanishes(ctx, f):
            raise GenerationError(f"{f.render(ctx.y_names)} does not vanish on the Veronese")
    idx2 = _index(ny, 2)
    got2 = span_dim(({idx2[m]: c for m, c in f.terms.items()} for f in quads), len(idx2))
    want2 = closed_forms.h0_ideal(ctx.r, ctx.d, 2)
    if got2 != want2:
        raise GenerationError(f"quadrics span {got2} dims of I_2, expected {want2}")
    idx3 = _index(ny, 3)

    def products():
        for f in quads:
            for k in range(ny):
                yield {idx3[tuple(e + (i == k) for i, e in enumerate(m))]: c for m, c in f.terms.items()}

    got3 = span_dim(products(), len(idx3))
    want3 = closed_forms.h0_ideal(ctx.r, ctx.d, 3)
    if got3 != want3:
        raise GenerationError(f"linear multiples of quadrics span {got3} dims of I_3, expected {want3}")
    return quads


def substitute_vanishes(ctx: VeroneseContext, f: Polynomial) -> bool:
    out: dict[Monomial, object] = {}
    for m, c in f.terms.items():
        e = ctx.pullback_exponent(m)
        out[e] = out.get(e, 0) + c
    return not any(out.values())


@lru_cache(maxsize=None)
def ideal_squared_space(ctx: VeroneseContext, m: int) -> SectionSpace:
    """Degree-m forms in y that vanish with all first partials along the Veronese."""
    _check_twist(m)
    ny, nx, d = ctx.n + 1, ctx.r + 1, ctx.d
    cols = _basis(ny, m)
    top = _index(nx, m * d)
    low = _index(nx, (m - 1) * d)
    entries = []
    for k, al in enumerate(cols):
        entries.append(((top[ctx.pullback_exponent(al)], k), 1))
        for j, a in enumerate(al):
            if a:
                reduced = al[:j] + (a - 1,) + al[j + 1 :]
                row = len(top) + j * len(low) + low[ctx.pullback_exponent(reduced)]
                entries.append(((row, k), a))
    mat = ExactMatrix(len(top) + ny * len(low), len(cols), entries)
    labels = [ctx.y_label(al) for al in cols]
    return SectionSpace(ctx, m, SectionKind.IDEAL_SQUARED, kernel_basis(mat, labels))


def h0_ideal_squared(ctx: VeroneseContext, m: int) -> int:
    return ideal_squared_space(ctx, m).dim


def conormal_matrix(ctx: VeroneseContext, m: int) -> ExactMatrix:
    """Stacked conditions on tuples (f_j) in S_{(m-1)d}: sum f_j t_j = 0 and sum f_j dt_j/dx_i = 0."""
    _check_twist(m)
    nx, d = ctx.r + 1, ctx.d
    src = _basis(nx, (m - 1) * d)
    top = _index(nx, m * d)
    low = _index(nx, m * d - 1)
    entries = []
    for j, t in enumerate(ctx.t_basis):
        for k, mu in enumerate(src):
            col = j * len(src) + k
            prod = mono_mul(mu, t)
            entries.append(((top[prod], col), 1))
            for i in range(nx):
                if t[i]:
                    e = prod[:i] + (prod[i] - 1,) + prod[i + 1 :]
                    entries.append(((len(top) + i * len(low) + low[e], col), t[i]))
    return ExactMatrix(len(top) + nx * len(low), len(ctx.t_basis) * len(src), entries)


@lru_cache(maxsize=None)
def conormal_space(ctx: VeroneseContext, m: int) -> SectionSpace:
    src = _basis(ctx.r + 1, (m - 1) * ctx.d)
    labels = [f"{ctx.x_label(mu)}*dy{j}" for j in range(ctx.n + 1) for mu in src]
    return SectionSpace(ctx, m, SectionKind.CONORMAL, kernel_basis(conormal_matrix(ctx, m), labels))


def h0_conormal(ctx: VeroneseContext, m: int) -> int:
    return conormal_space(ctx, m).dim


@lru_cache(maxsize=None)
def h1_ideal_squared(ctx: VeroneseContext, m: int) -> int:
    """Cokernel dimension of H0(I(m)) -> H0(I/I^2(m)), read off the long exact sequence."""
    multiplication_matrix(ctx, m)  # raises unless projectively normal in degree m
    h1 = h0_conormal(ctx, m) - ideal_piece(ctx, m).dim + h0_ideal_squared(ctx, m)
    if h1 < 0:
        raise InconsistencyError(f"negative h1(I^2({m}H)) = {h1} at r={ctx.r}, d={ctx.d}")
    return h1


def torsion_dim_via_sequence(ctx: VeroneseContext) -> int:
    return h1_ideal_squared(ctx, 2)
