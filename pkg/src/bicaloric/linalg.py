"""Exact linear algebra over the rationals.

Dense matrices of ``fractions.Fraction`` entries with reduced row echelon
form, rank, kernel bases, linear solves, and inverse-Vandermonde coefficient
extraction.  Pivoting is on the first nonzero entry (no magnitude pivoting:
there is no rounding to stabilize), which makes every result reproducible.

The elimination inner loop walks only the nonzero support of the pivot row;
for the operator matrices built downstream, whose columns touch few rows,
this keeps reduction fast without giving up dense storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction | int

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[Fraction]]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("data shape does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> RationalMatrix:
        data = [[Fraction(v) for v in row] for row in rows]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls(nrows, ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, [[_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, k: int) -> RationalMatrix:
        data = [[_ONE if i == j else _ZERO for j in range(k)] for i in range(k)]
        return cls(k, k, data)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.data[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(v) for v in row) for row in self.data
        )
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def copy(self) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, [list(r) for r in self.data])

    def apply(self, vec: Sequence[Scalar]) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("vector length must equal the column count")
        v = [Fraction(x) for x in vec]
        out = []
        for row in self.data:
            acc = _ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return out


@dataclass(frozen=True)
class KernelBasis:
    """Linearly independent vectors spanning the nullspace of a matrix."""

    vectors: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.vectors)


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    data = [list(row) for row in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if data[i][c]:
                pr = i
                break
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        prow = data[r]
        pivot = prow[c]
        if pivot != 1:
            inv = _ONE / pivot
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = data[i][c]
            if f:
                row = data[i]
                for j in support:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RationalMatrix(nrows, ncols, data), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel(m: RationalMatrix) -> KernelBasis:
    """Basis of the nullspace, one vector per free column of the RREF."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[free] = _ONE
        for row_i, pc in enumerate(pivots):
            v[pc] = -reduced.data[row_i][free]
        vectors.append(tuple(v))
    assert len(pivots) + len(vectors) == m.cols  # rank-nullity, exact
    return KernelBasis(tuple(vectors), m.cols)


def solve(m: RationalMatrix, rhs: Sequence[Scalar]) -> list[Fraction] | None:
    """One exact solution of m x = rhs, or None when inconsistent.

    Free variables are set to zero (the RREF particular solution), so repeated
    calls are reproducible.
    """
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length must equal the row count")
    aug_data = [list(row) + [Fraction(rhs[i])] for i, row in enumerate(m.data)]
    aug = RationalMatrix(m.rows, m.cols + 1, aug_data)
    reduced, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [_ZERO] * m.cols
    for row_i, pc in enumerate(pivots):
        x[pc] = reduced.data[row_i][m.cols]
    return x


def vandermonde_coefficients(
    samples: Iterable[Scalar], d: int
) -> RationalMatrix:
    """Coefficients b with sum_i b[i][j] * samples[i]^m = delta_{jm}, 0<=m<=d.

    Column j of the result reconstructs the coefficient of s^j from the values
    of a degree-d polynomial at the d+1 distinct sample points: this is the
    inverse of the Vandermonde matrix built from the samples.  Distinctness is
    exactly what keeps that matrix invertible (a degree-d polynomial has at
    most d distinct roots), and any distinct rationals are accepted.
    """
    pts = [Fraction(s) for s in samples]
    if len(pts) != d + 1:
        raise ValueError(f"need exactly {d + 1} sample values, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise ValueError("sample values must be distinct")
    size = d + 1
    aug_data = []
    for mrow in range(size):
        row = [pts[i] ** mrow for i in range(size)]
        row += [_ONE if mrow == j else _ZERO for j in range(size)]
        aug_data.append(row)
    reduced, pivots = rref(RationalMatrix(size, 2 * size, aug_data))
    assert pivots == list(range(size))  # invertible by distinctness
    data = [row[size:] for row in reduced.data]
    return RationalMatrix(size, size, data)
