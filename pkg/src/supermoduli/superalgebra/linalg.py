"""Exact linear algebra over QQ (sympy DomainMatrix) and determinants over Grassmann rings."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from supermoduli.superalgebra.poly import SuperPoly, to_qq

SparseVector = dict[int, Any]


class ColumnSpace:
    """Builds a sparse matrix column by column, keying rows by arbitrary labels."""

    def __init__(self) -> None:
        self.row_index: dict[Hashable, int] = {}
        self.row_labels: list[Hashable] = []
        self.columns: list[SparseVector] = []

    def row(self, label: Hashable) -> int:
        index = self.row_index.get(label)
        if index is None:
            index = len(self.row_labels)
            self.row_index[label] = index
            self.row_labels.append(label)
        return index

    def vector(self, entries: Mapping[Hashable, Any]) -> SparseVector:
        vec: SparseVector = {}
        for label, value in entries.items():
            q = to_qq(value)
            if q:
                vec[self.row(label)] = q
        return vec

    def add_column(self, entries: Mapping[Hashable, Any]) -> int:
        self.columns.append(self.vector(entries))
        return len(self.columns) - 1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.columns)

    def matrix(self, extra: Sequence[SparseVector] = ()) -> DomainMatrix:
        """The matrix with the stored columns followed by ``extra`` columns."""
        cols = [*self.columns, *extra]
        return sparse_matrix(cols, len(self.row_labels))


def sparse_matrix(columns: Sequence[SparseVector], nrows: int) -> DomainMatrix:
    """DomainMatrix over QQ whose j-th column is ``columns[j]``."""
    rows: dict[int, dict[int, Any]] = {}
    for j, col in enumerate(columns):
        for i, value in col.items():
            if value:
                rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, (nrows, len(columns)), QQ)


def _rows_of(matrix: DomainMatrix) -> dict[int, dict[int, Any]]:
    return {i: dict(row) for i, row in matrix.to_sdm().items()}


def rank(matrix: DomainMatrix) -> int:
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return 0
    return int(matrix.rank())


def rref_pivots(matrix: DomainMatrix) -> tuple[dict[int, dict[int, Any]], tuple[int, ...]]:
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return {}, ()
    reduced, pivots = matrix.rref()
    return _rows_of(reduced), tuple(pivots)


def nullspace(matrix: DomainMatrix) -> list[SparseVector]:
    """Basis of {x : M x = 0} as sparse vectors."""
    nrows, ncols = matrix.shape
    if ncols == 0:
        return []
    if nrows == 0 or not _rows_of(matrix):
        return [{j: QQ(1)} for j in range(ncols)]
    basis = matrix.nullspace()
    return [dict(row) for _, row in sorted(basis.to_sdm().items())]


def solve(matrix: DomainMatrix, rhs: SparseVector) -> SparseVector | None:
    """One solution of M x = b, or None when the system is inconsistent."""
    nrows, ncols = matrix.shape
    if not rhs:
        return {}
    if nrows == 0:
        return None
    rows = _rows_of(matrix)
    for i, value in rhs.items():
        rows.setdefault(i, {})[ncols] = value
    augmented = DomainMatrix(rows, (nrows, ncols + 1), QQ)
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        return None
    reduced_rows = _rows_of(reduced)
    return {col: reduced_rows[i][ncols] for i, col in enumerate(pivots) if ncols in reduced_rows.get(i, {})}


def complement_pivots(space: ColumnSpace, candidates: Sequence[SparseVector]) -> list[int]:
    """Indices of candidate vectors that extend the column span, chosen greedily in order."""
    base = len(space.columns)
    _, pivots = rref_pivots(space.matrix(candidates))
    return [p - base for p in pivots if p >= base]


def grassmann_det(rows: Sequence[Sequence[SuperPoly]]) -> SuperPoly:
    """Determinant of a square matrix of even elements of a Grassmann-coefficient ring.

    Even elements commute, so the determinant is well defined. Columns with a
    unit entry are eliminated with that pivot; a column of nilpotent entries is
    expanded by cofactors, and branches whose prefactor vanishes are pruned.
    """
    if not rows:
        raise ValueError("empty matrix")
    ctx = rows[0][0].ctx
    if all(entry.is_constant() for row in rows for entry in row):
        dense = [[to_qq(entry.scalar()) for entry in row] for row in rows]
        return ctx.const(DomainMatrix(dense, (len(dense), len(dense)), QQ).det())
    return _det(ctx, [list(row) for row in rows], ctx.one())


def _det(ctx: Any, rows: list[list[SuperPoly]], prefactor: SuperPoly) -> SuperPoly:
    if not prefactor:
        return ctx.zero()
    n = len(rows)
    if n == 0:
        return prefactor
    pivot_row = next((i for i in range(n) if rows[i][0].is_unit()), None)
    if pivot_row is not None:
        if pivot_row:
            rows[0], rows[pivot_row] = rows[pivot_row], rows[0]
            prefactor = -prefactor
        pivot = rows[0][0]
        pivot_inv = pivot.inverse()
        reduced = []
        for row in rows[1:]:
            factor = row[0] * pivot_inv
            reduced.append([row[j] - factor * rows[0][j] for j in range(1, n)] if factor else row[1:])
        return _det(ctx, reduced, prefactor * pivot)
    total = ctx.zero()
    for i in range(n):
        if not rows[i][0]:
            continue
        sign = -1 if i % 2 else 1
        minor = [row[1:] for k, row in enumerate(rows) if k != i]
        total = total + _det(ctx, minor, prefactor * rows[i][0] * sign)
    return total
