"""Sparse polynomials with rational coefficients in a fixed set of variables.

Monomials are plain exponent tuples.  Within one degree they are ordered
lexicographically descending on the exponent vector (``x^3, x^2y, xy^2,
y^3``), and across degrees by increasing degree; every basis and matrix
labelling in the package uses this order.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from math import comb

Monomial = tuple[int, ...]


def _compositions(num_vars: int, degree: int) -> Iterator[Monomial]:
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _compositions(num_vars - 1, degree - first):
            yield (first,) + rest


def monomial_basis(num_vars: int, degree: int) -> list[Monomial]:
    """All monomials of ``degree`` in ``num_vars`` variables, in the fixed order."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        return []
    return list(_compositions(num_vars, degree))


def monomial_count(num_vars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + num_vars - 1, num_vars - 1)


def order_key(m: Monomial) -> tuple:
    """Sort key realising the fixed order (ascending key = earlier monomial)."""
    return (sum(m), tuple(-e for e in m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    q = tuple(y - x for x, y in zip(a, b))
    if min(q, default=0) < 0:
        raise ValueError(f"{a} does not divide {b}")
    return q


def render_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def default_names(nvars: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(nvars)]


class Polynomial:
    """An element of Q[v_0, ..., v_{nvars-1}] stored as ``{exponents: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or min(mono, default=0) < 0:
                raise ValueError(f"bad exponent vector {mono} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c=1) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        return cls(nvars, {tuple(int(k == i) for k in range(nvars)): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(exponents), {tuple(exponents): coeff})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.nvars, {m: c * a for m, a in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.nvars, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order_key(t[0]))

    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = render_monomial(m, names)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.render()!r})"

    def partial_derivative(self, var: int) -> Polynomial:
        return partial_derivative(self, var)

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        return substitute(self, images)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def partial_derivative(f: Polynomial, var: int) -> Polynomial:
    if not 0 <= var < f.nvars:
        raise IndexError(f"variable index {var} out of range")
    out = {}
    for m, c in f.terms.items():
        e = m[var]
        if e:
            out[m[:var] + (e - 1,) + m[var + 1 :]] = c * e
    return Polynomial(f.nvars, out)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace variable ``j`` of ``f`` by ``images[j]``."""
    if len(images) != f.nvars:
        raise ValueError(f"expected {f.nvars} images, got {len(images)}")
    if not images:
        return f
    target = images[0].nvars
    if any(p.nvars != target for p in images):
        raise ValueError("images must live in one ring")
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(j: int, e: int) -> Polynomial:
        if (j, e) not in powers:
            powers[j, e] = images[j] ** e
        return powers[j, e]

    out = Polynomial.zero(target)
    for m, c in f.terms.items():
        term = Polynomial.constant(target, c)
        for j, e in enumerate(m):
            if e:
                term = term * power(j, e)
        out = out + term
    return out


def euler_check(f: Polynomial, degree: int) -> bool:
    """True iff sum_i x_i df/dx_i == degree * f."""
    if not f.is_homogeneous():
        raise ValueError("Euler identity needs a homogeneous polynomial")
    lhs = Polynomial.zero(f.nvars)
    for i in range(f.nvars):
        lhs = lhs + Polynomial.variable(f.nvars, i) * partial_derivative(f, i)
    return lhs == f * degree
