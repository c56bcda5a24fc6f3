from fractions import Fraction

import pytest

from veronese_omega.cone import (
    _differentials,
    block_quotient_dim,
    contraction,
    killed_dim,
    omega_piece,
    torsion_direct,
    total_torsion_direct,
)
from veronese_omega.errors import InconclusiveError
from veronese_omega.gaussian import torsion_dim_kernel
from veronese_omega.polyring import Polynomial, monomial_basis, partial_derivative
from veronese_omega.sections import make_context, quadric_relations, substitute_vanishes, torsion_dim_via_sequence


def test_omega_piece_examples():
    p = omega_piece(make_context(1, 2), 2)
    assert p.ambient_dim == 9 and p.relation_space.dim == 1 and p.quotient_dim == 8
    p = omega_piece(make_context(1, 3), 2)
    assert p.ambient_dim == 16 and p.relation_space.dim == 3 and p.quotient_dim == 13
    for r, d in [(1, 2), (2, 2), (1, 3)]:
        ctx = make_context(r, d)
        assert omega_piece(ctx, 1).quotient_dim == ctx.n + 1
    with pytest.raises(ValueError):
        omega_piece(make_context(1, 2), 0)


def test_conic_relation_is_dq():
    ctx = make_context(1, 2)
    (v,) = omega_piece(ctx, 2).relation_space.basis
    labels = omega_piece(ctx, 2).ambient_labels
    # dq = y2 dy0 - 2 y1 dy1 + y0 dy2 with y_j as x-monomials
    got = {labels[k]: c for k, c in v.items()}
    assert got == {"x1^2*dy0": 1, "x0*x1*dy1": -2, "x0^2*dy2": 1}


def test_contraction_examples():
    c = contraction(make_context(1, 2), 2)
    assert c.matrix.rows == 5 and c.n_dim == 3
    c = contraction(make_context(1, 3), 2)
    assert c.matrix.rows == 7 and c.n_dim == 6
    for r, d in [(1, 2), (1, 3), (2, 2)]:
        assert contraction(make_context(r, d), 1).n_dim == 0


def test_euler_contraction_of_df_is_twice_f():
    for r, d in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        ctx = make_context(r, d)
        ys = [Polynomial.variable(ctx.n + 1, j) for j in range(ctx.n + 1)]
        for f in quadric_relations(ctx):
            xi_df = sum((ys[j] * partial_derivative(f, j) for j in range(ctx.n + 1)), Polynomial.zero(ctx.n + 1))
            assert xi_df == f * 2
            assert substitute_vanishes(ctx, xi_df)
        assert len(_differentials(ctx)) == len(quadric_relations(ctx))


@pytest.mark.parametrize("r,d,m", [(1, 2, 2), (1, 3, 2), (1, 3, 3), (2, 2, 2), (2, 3, 2)])
def test_block_dims_sum_to_piece(r, d, m):
    ctx = make_context(r, d)
    total = sum(block_quotient_dim(ctx, delta) for delta in monomial_basis(r + 1, m * d))
    assert total == omega_piece(ctx, m).quotient_dim


def test_torsion_direct_examples():
    assert torsion_direct(make_context(1, 3), 2) == 1
    assert torsion_direct(make_context(1, 2), 2) == 0
    assert torsion_direct(make_context(1, 3), 3) == 0


def test_total_torsion_examples():
    assert total_torsion_direct(make_context(1, 3), range(1, 5)) == 1
    assert total_torsion_direct(make_context(2, 2), range(1, 5)) == 0
    assert total_torsion_direct(make_context(1, 1), range(1, 4)) == 0


@pytest.mark.parametrize("r,d", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)])
def test_three_way_agreement(r, d):
    ctx = make_context(r, d)
    assert torsion_direct(ctx, 2) == torsion_dim_via_sequence(ctx) == torsion_dim_kernel(ctx)


@pytest.mark.parametrize("r,d", [(1, 3), (2, 3), (1, 4)])
def test_torsion_concentrated_in_degree_two(r, d):
    ctx = make_context(r, d)
    assert torsion_direct(ctx, 1) == 0
    assert torsion_direct(ctx, 3) == 0


def test_killed_dims_are_monotone():
    ctx = make_context(1, 3)
    dims = [killed_dim(ctx, 2, k) for k in (1, 2, 3)]
    assert dims == sorted(dims, reverse=True)
    assert dims[-1] == 1


def test_inconclusive_when_budget_runs_out():
    ctx = make_context(1, 3)
    with pytest.raises(InconclusiveError):
        torsion_direct(ctx, 2, window=3, max_degree=3)
    with pytest.raises(InconclusiveError):
        torsion_direct(ctx, 9, max_degree=8)
    with pytest.raises(ValueError):
        torsion_direct(ctx, 2, window=0)


def test_differentials_are_multihomogeneous():
    ctx = make_context(2, 2)
    for deg, coeffs in _differentials(ctx):
        assert sum(deg) == 2 * ctx.d
        assert all(isinstance(c, Fraction) and c for c in coeffs.values())
