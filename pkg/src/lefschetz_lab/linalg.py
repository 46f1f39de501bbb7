"""Exact linear algebra over the rationals and over polynomial entries.

Every rank decision in the package goes through this module.  Rational
matrices use :class:`fractions.Fraction`; ranks are computed by integer
fraction-free elimination, echelon forms by Gauss-Jordan over fractions.
Matrices with polynomial entries get their rank over the rational function
field by Bareiss elimination with polynomial pivots.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .poly import Polynomial


class ExactMatrix:
    """Dense immutable matrix of :class:`Fraction` entries, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        entries = tuple(tuple(x if isinstance(x, Fraction) else Fraction(x) for x in row)
                        for row in data)
        if cols is None:
            if not entries:
                raise PreconditionError("column count required for a matrix with no rows")
            cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise PreconditionError("ragged matrix rows")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.entries)] if self.rows else
                           [[] for _ in range(self.cols)], self.rows)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise PreconditionError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.transpose().entries
        return ExactMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols]
                            for r in self.entries], other.cols)

    def __mul__(self, scalar) -> "ExactMatrix":
        s = Fraction(scalar)
        return ExactMatrix([[s * x for x in r] for r in self.entries], self.cols)

    __rmul__ = __mul__

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch {self.shape} + {other.shape}")
        return ExactMatrix([[a + b for a, b in zip(r, s)]
                            for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self):
        return self * -1

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"ExactMatrix([{body}], cols={self.cols})"


def _rref_rows(rows: list, ncols: int) -> list:
    """In-place Gauss-Jordan on a list of Fraction lists; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [x * inv for x in prow]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: ExactMatrix):
    """Reduced row echelon form and the strictly increasing pivot columns.

    Pivot choice: leftmost column with a nonzero entry, first such row.
    """
    rows = [list(r) for r in m.entries]
    pivots = _rref_rows(rows, m.cols)
    return ExactMatrix(rows, m.cols), pivots


def row_space_basis(vectors: Sequence[Sequence], ncols: int):
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``, with pivots."""
    rows = [[x if isinstance(x, Fraction) else Fraction(x) for x in v] for v in vectors]
    pivots = _rref_rows(rows, ncols)
    return [tuple(r) for r in rows[:len(pivots)]], pivots


def _integer_rows(m: ExactMatrix) -> list:
    out = []
    for r in m.entries:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _bareiss_rank(rows: list, ncols: int) -> int:
    """Fraction-free elimination on an integer matrix (modified in place)."""
    nrows = len(rows)
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            a = ri[c]
            if a:
                for j in range(c + 1, ncols):
                    ri[j] = (piv * ri[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if ri[j]:
                        ri[j] = piv * ri[j] // prev
            ri[c] = 0
        prev = piv
        r += 1
    return r


def rank(m: ExactMatrix) -> int:
    """Rank over Q."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss_rank(_integer_rows(m), m.cols)


def kernel_basis(m: ExactMatrix) -> list:
    """Basis of the right null space, one vector per free column of the RREF."""
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.entries[i][f]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(m: ExactMatrix) -> list:
    """Vectors ``w`` with ``w^T m = 0``."""
    return kernel_basis(m.transpose())


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise PreconditionError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)]
            for i, r in enumerate(m.entries)]
    pivots = _rref_rows(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([r[n:] for r in rows], n)


def solve(m: ExactMatrix, b: Sequence) -> tuple:
    """One solution ``x`` of ``m x = b``; raises ``ValueError`` if inconsistent."""
    rows = [list(r) + [Fraction(bi)] for r, bi in zip(m.entries, b)]
    pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.cols]
    return tuple(x)


def subspace_dim_of_sum(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> int:
    if not a and not b:
        return 0
    return rank(ExactMatrix(list(a) + list(b), ncols))


def same_subspace(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    """Whether two lists of vectors span the same subspace (via canonical RREF)."""
    return row_space_basis(a, ncols)[0] == row_space_basis(b, ncols)[0]


class PolyMatrix:
    """Matrix whose entries are :class:`Polynomial` in a common set of variables."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, data: Sequence[Sequence[Polynomial]], nvars: int, cols: int | None = None):
        entries = tuple(tuple(row) for row in data)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if any(len(r) != cols for r in entries):
            raise PreconditionError("ragged matrix rows")
        for r in entries:
            for p in r:
                if p.nvars != nvars:
                    raise PreconditionError("inconsistent variable count in PolyMatrix")
        self.rows = len(entries)
        self.cols = cols
        self.nvars = nvars
        self.entries = entries

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def evaluate(self, point: Sequence) -> ExactMatrix:
        return ExactMatrix([[p.evaluate(point) for p in r] for r in self.entries], self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.entries)] if self.rows else [],
                          self.nvars, self.rows)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, nvars={self.nvars})"


def generic_rank(m: PolyMatrix) -> int:
    """Rank over the rational function field in the entry variables.

    Bareiss fraction-free elimination: every intermediate entry is a minor
    of the input, so each division by the previous pivot is exact.
    Among admissible pivot rows the entry with fewest terms is preferred to
    limit growth.
    """
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    if nrows == 0 or ncols == 0:
        return 0
    one = Polynomial.constant(m.nvars, 1)
    prev = one
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        cands = [i for i in range(r, nrows) if rows[i][c]]
        if not cands:
            continue
        i = min(cands, key=lambda t: (len(rows[t][c]), t))
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, ncols):
                x = piv * ri[j]
                if a:
                    x = x - a * prow[j]
                if x and prev != one:
                    x = x.exact_div(prev)
                ri[j] = x
            ri[c] = Polynomial.zero(m.nvars)
        prev = piv
        r += 1
    return r
