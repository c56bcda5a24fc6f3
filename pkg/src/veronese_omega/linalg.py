"""Exact linear algebra over the rationals.

Matrices are stored sparsely.  Before any elimination the matrix is split
into the connected components of its row/column incidence graph; every map
built in this package preserves a multigrading, so the components are tiny
even when the matrix is large.  Each component is eliminated densely with
fraction-free (Bareiss) steps on an integer-scaled copy, and only the final
back-substitution to reduced echelon form touches fractions.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Vector = dict  # sparse coordinate vector: index -> nonzero Fraction


class ExactMatrix:
    """A ``rows x cols`` matrix of exact rationals, stored as nonzero entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[tuple[int, int], int | Fraction] = {}
        # repeated positions accumulate, which is what the builders rely on
        for (i, j), value in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            data[i, j] = data.get((i, j), 0) + _as_exact(value)
        self._entries = {k: _as_exact(v) for k, v in data.items() if v}

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> ExactMatrix:
        if cols is None:
            cols = len(data[0]) if data else 0
        entries = []
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged row data")
            entries.extend(((i, j), v) for j, v in enumerate(row) if v)
        return cls(len(data), cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> ExactMatrix:
        entries = [((i, j), v) for j, col in enumerate(columns) for i, v in col.items()]
        return cls(rows, len(columns), entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return ((k, Fraction(v)) for k, v in self._entries.items())

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return Fraction(self._entries.get((i, j), 0))

    def column(self, j: int) -> Vector:
        return {i: Fraction(v) for (i, jj), v in self._entries.items() if jj == j}

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = Fraction(v)
        return out

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows, (((j, i), v) for (i, j), v in self._entries.items()))

    def apply(self, vector: Mapping[int, object] | Sequence) -> Vector:
        """Return ``A @ v`` as a sparse vector."""
        if not isinstance(vector, Mapping):
            if len(vector) != self.cols:
                raise ValueError("vector length does not match column count")
            vector = {j: v for j, v in enumerate(vector) if v}
        out: dict[int, Fraction] = {}
        for (i, j), a in self._entries.items():
            x = vector.get(j)
            if x:
                out[i] = out.get(i, 0) + a * x
        return {i: Fraction(v) for i, v in out.items() if v}

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of Q^ambient_dim with its canonical basis.

    ``basis`` is in reduced row-echelon form: vectors sorted by pivot, each
    pivot entry 1, and every pivot column zero in all other vectors.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.ambient_dim:
            raise ValueError("labels must name every ambient coordinate")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(v) for v in self.basis)

    def dense_basis(self) -> list[list[Fraction]]:
        out = []
        for v in self.basis:
            row = [Fraction(0)] * self.ambient_dim
            for j, x in v.items():
                row[j] = x
            out.append(row)
        return out

    def reduce(self, vector: Mapping[int, object]) -> Vector:
        """Residual of ``vector`` after clearing every pivot coordinate."""
        res = {j: Fraction(x) for j, x in vector.items() if x}
        for p, b in zip(self.pivots, self.basis):
            c = res.get(p)
            if c:
                for j, x in b.items():
                    y = res.get(j, 0) - c * x
                    if y:
                        res[j] = y
                    else:
                        res.pop(j, None)
        return res

    def __contains__(self, vector) -> bool:
        if not isinstance(vector, Mapping):
            vector = {j: x for j, x in enumerate(vector) if x}
        return not self.reduce(vector)

    def canonical(self) -> Subspace:
        """Recompute the echelon basis from scratch (idempotent)."""
        return row_space(self.basis, self.ambient_dim, self.labels)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and list(self.basis) == list(other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


# -- dense kernels ---------------------------------------------------------


def _as_exact(value):
    if type(value) is int:
        return value
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def _integer_row(row: dict[int, object]) -> dict[int, int]:
    dens = [x.denominator for x in row.values() if type(x) is not int]
    if not dens:
        return row
    scale = lcm(*dens)
    return {j: int(x * scale) for j, x in row.items()}


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns echelon rows and pivot columns."""
    m = [row[:] for row in rows]
    nrows = len(m)
    prev = 1
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        top = m[r]
        piv = top[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (piv * row[j] - f * top[j]) // prev
            elif piv != prev:
                # entries stay minors of the original matrix only if every row is rescaled
                for j in range(c, ncols):
                    row[j] = (piv * row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref(rows: list[list[int]], ncols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced echelon form as sparse rows; integer Gauss-Jordan, one division per entry."""
    ech, pivots = _bareiss(rows, ncols)
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        low = ech[k]
        for i in range(k):
            f = ech[i][p]
            if f:
                a = low[p]
                row = [a * x - f * y for x, y in zip(ech[i], low)]
                g = gcd(*row)
                ech[i] = [x // g for x in row] if g > 1 else row
    out = []
    for row, p in zip(ech, pivots):
        piv = row[p]
        out.append({j: (Fraction(x, piv) if x % piv else x // piv) for j, x in enumerate(row) if x})
    return out, pivots


# -- block decomposition ---------------------------------------------------


def _components(a: ExactMatrix) -> list[tuple[list[int], list[int]]]:
    parent = list(range(a.rows + a.cols))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in a._entries:
        ri, rj = find(i), find(a.rows + j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, tuple[set, set]] = {}
    for i, j in a._entries:
        g = groups.setdefault(find(i), (set(), set()))
        g[0].add(i)
        g[1].add(j)
    blocks = [(sorted(r), sorted(c)) for r, c in groups.values()]
    blocks.sort(key=lambda b: b[1][0])
    return blocks


def _iter_blocks(a: ExactMatrix, reverse: bool = False):
    """Yield ``(row_ids, col_ids, integer_rows)`` per component.

    With ``reverse`` the local columns run from last to first.
    """
    blocks = _components(a)
    where: dict[int, tuple[int, int]] = {}
    for b, (rows, _) in enumerate(blocks):
        for k, i in enumerate(rows):
            where[i] = (b, k)
    cpos = []
    for _, cols in blocks:
        n = len(cols)
        cpos.append({j: (n - 1 - k if reverse else k) for k, j in enumerate(cols)})
    sparse: list[list[dict[int, object]]] = [[{} for _ in rows] for rows, _ in blocks]
    for (i, j), v in a._entries.items():
        b, k = where[i]
        sparse[b][k][cpos[b][j]] = v
    for (rows, cols), srows in zip(blocks, sparse):
        n = len(cols)
        dense = []
        for row in srows:
            full = [0] * n
            for j, x in _integer_row(row).items():
                full[j] = x
            dense.append(full)
        yield rows, (cols[::-1] if reverse else cols), dense


# -- public operations -----------------------------------------------------


def rank(a: ExactMatrix) -> int:
    return sum(len(_bareiss(dense, len(cols))[1]) for _, cols, dense in _iter_blocks(a))


def is_surjective(a: ExactMatrix) -> bool:
    return rank(a) == a.rows


def kernel_basis(a: ExactMatrix, labels: Sequence[str] | None = None) -> Subspace:
    """Canonical basis of ``{v : A v = 0}``.

    Pivoting right-to-left makes each free column the lowest index of its
    kernel vector, so the vectors are already in reduced echelon form.
    """
    vectors: list[Vector] = []
    touched: set[int] = set()
    for _, cols, dense in _iter_blocks(a, reverse=True):
        touched.update(cols)
        red, pivots = _rref(dense, len(cols))
        pivset = set(pivots)
        for f in range(len(cols)):
            if f in pivset:
                continue
            v = {cols[f]: Fraction(1)}
            for row, p in zip(red, pivots):
                x = row.get(f)
                if x:
                    v[cols[p]] = Fraction(-x)
            vectors.append(v)
    for j in range(a.cols):
        if j not in touched:
            vectors.append({j: Fraction(1)})
    vectors.sort(key=min)
    return Subspace(a.cols, tuple(vectors), tuple(labels) if labels is not None else None)


def _stack(vectors) -> tuple[int, list]:
    entries = []
    nrows = 0
    for i, v in enumerate(vectors):
        nrows = i + 1
        items = v.items() if isinstance(v, Mapping) else enumerate(v)
        entries.extend(((i, j), x) for j, x in items if x)
    return nrows, entries


def row_space(
    vectors: Iterable[Mapping[int, object] | Sequence],
    ambient_dim: int,
    labels: Sequence[str] | None = None,
) -> Subspace:
    """Canonical basis of the span of ``vectors``."""
    nrows, entries = _stack(vectors)
    a = ExactMatrix(nrows, ambient_dim, entries)
    basis: list[Vector] = []
    for _, cols, dense in _iter_blocks(a):
        red, _ = _rref(dense, len(cols))
        for row in red:
            basis.append({cols[k]: Fraction(x) for k, x in row.items()})
    basis.sort(key=min)
    return Subspace(ambient_dim, tuple(basis), tuple(labels) if labels is not None else None)


def span_dim(vectors: Iterable[Mapping[int, object] | Sequence], ambient_dim: int) -> int:
    nrows, entries = _stack(vectors)
    return rank(ExactMatrix(nrows, ambient_dim, entries))
