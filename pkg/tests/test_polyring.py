from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veronese_omega.polyring import (
    Polynomial,
    euler_check,
    monomial_basis,
    multiply,
    partial_derivative,
    substitute,
)

X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)


def test_monomial_basis_order():
    assert monomial_basis(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert len(monomial_basis(3, 1)) == 3
    assert len(monomial_basis(3, 2)) == comb(4, 2) == 6
    assert monomial_basis(3, 2)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


@pytest.mark.parametrize("v,e", [(v, e) for v in range(1, 5) for e in range(0, 6)])
def test_monomial_count(v, e):
    basis = monomial_basis(v, e)
    assert len(basis) == len(set(basis)) == comb(e + v - 1, v - 1)


def test_multiply_examples():
    assert multiply(X + Y, X - Y) == X**2 - Y**2
    f = X**2 * Y + 3
    assert multiply(f, Polynomial.constant(2)) == f
    assert multiply(X**2 * Y, X * Y**2) == X**3 * Y**3


def test_partial_derivative_examples():
    assert partial_derivative(X**2 * Y, 0) == 2 * X * Y
    assert partial_derivative(X**3, 1) == 0
    assert partial_derivative(X**3 - 3 * X * Y**2, 0) == 3 * X**2 - 3 * Y**2
    with pytest.raises(IndexError):
        partial_derivative(X, 2)


def _y(n, j):
    return Polynomial.variable(n, j)


def test_substitute_examples():
    conic = _y(3, 0) * _y(3, 2) - _y(3, 1) ** 2
    assert substitute(conic, [X**2, X * Y, Y**2]) == 0
    assert substitute(_y(3, 0), [X**2, X * Y, Y**2]) == X**2
    cubic = [X**3, X**2 * Y, X * Y**2, Y**3]
    q = _y(4, 0) * _y(4, 3) - _y(4, 1) * _y(4, 2)
    assert substitute(q, cubic) == 0
    with pytest.raises(ValueError):
        substitute(q, cubic[:3])


def test_euler_examples():
    assert euler_check(X**3, 3)
    assert euler_check(X**2 * Y**2, 4)
    assert euler_check(Polynomial.zero(2), 0)
    assert not euler_check(X**3, 2)
    with pytest.raises(ValueError):
        euler_check(X**2 + Y, 2)


def test_render_is_deterministic():
    f = Fraction(1, 2) * Y**3 - 3 * X * Y**2 + X**3
    assert f.render(["x", "y"]) == "x^3 - 3*x*y^2 + 1/2*y^3"
    assert Polynomial.zero(2).render() == "0"


coeffs = st.integers(-4, 4).map(Fraction) | st.fractions(max_denominator=5)


@st.composite
def homogeneous(draw, nvars=3, max_degree=4):
    e = draw(st.integers(0, max_degree))
    basis = monomial_basis(nvars, e)
    cs = draw(st.lists(coeffs, min_size=len(basis), max_size=len(basis)))
    return Polynomial(nvars, dict(zip(basis, cs))), e


@settings(max_examples=100, deadline=None)
@given(homogeneous())
def test_euler_identity_holds(fe):
    f, e = fe
    assert euler_check(f, e)


@settings(max_examples=50, deadline=None)
@given(homogeneous(nvars=3, max_degree=2), homogeneous(nvars=3, max_degree=2), st.data())
def test_substitute_is_ring_homomorphism(fe, ge, data):
    f, _ = fe
    g, _ = ge
    images = []
    for _ in range(3):
        h, _ = data.draw(homogeneous(nvars=2, max_degree=2))
        images.append(h)
    assert substitute(f * g, images) == substitute(f, images) * substitute(g, images)
    assert substitute(f + g, images) == substitute(f, images) + substitute(g, images)
