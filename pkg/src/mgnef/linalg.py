"""Exact linear algebra over the rationals.

Everything here works on tuples of ``fractions.Fraction`` and never touches
floating point.  Pivot selection is deterministic: the first nonzero entry
in row order wins, so results are reproducible across runs and machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NonSquareError

Vec = tuple[Fraction, ...]


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def primitive(v: Sequence[Fraction]) -> Vec:
    """Scale by a positive rational to integer entries with gcd 1.

    Positive scaling only, so the direction of the vector is preserved.
    The zero vector maps to itself.
    """
    if is_zero_vec(v):
        return tuple(Fraction(0) for _ in v)
    denom = lcm(*(a.denominator for a in v))
    ints = [a.numerator * (denom // a.denominator) for a in v]
    g = gcd(*ints)
    return tuple(Fraction(n // g) for n in ints)


def primitive_oriented(v: Sequence[Fraction]) -> Vec:
    """Primitive form with the first nonzero entry made positive."""
    p = primitive(v)
    for a in p:
        if a != 0:
            return p if a > 0 else tuple(-x for x in p)
    return p


@dataclass(frozen=True)
class QMatrix:
    """Immutable rational matrix, row major."""

    nrows: int
    ncols: int
    entries: tuple[Fraction, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Fraction] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in r)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows(
            [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> Vec:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def col(self, j: int) -> Vec:
        return tuple(self.entry(i, j) for i in range(self.nrows))

    def rows(self) -> list[Vec]:
        return [self.row(i) for i in range(self.nrows)]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([self.col(j) for j in range(self.ncols)])

    def matvec(self, v: Sequence[Fraction]) -> Vec:
        return tuple(dot(self.row(i), v) for i in range(self.nrows))

    def _rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form; returns (rows, pivot column list)."""
        m = [list(self.row(i)) for i in range(self.nrows)]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, self.nrows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            m[r] = [inv * x for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise NonSquareError(f"{self.nrows}x{self.ncols} matrix has no determinant")
        m = [list(self.row(i)) for i in range(self.nrows)]
        result = Fraction(1)
        for c in range(self.ncols):
            p = next((i for i in range(c, self.nrows) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                result = -result
            result *= m[c][c]
            for i in range(c + 1, self.nrows):
                if m[i][c] != 0:
                    f = m[i][c] / m[c][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return result

    def kernel_basis(self) -> list[Vec]:
        """Basis of the right kernel, one vector per free column."""
        m, pivots = self._rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis: list[Vec] = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -m[r][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "QMatrix":
        if self.nrows != self.ncols:
            raise NonSquareError(f"{self.nrows}x{self.ncols} matrix has no inverse")
        n = self.nrows
        aug = QMatrix.from_rows(
            [list(self.row(i)) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        )
        m, pivots = aug._rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return QMatrix.from_rows([r[n:] for r in m])

    def solve(self, b: Sequence[Fraction]) -> Vec | None:
        """One solution of ``A x = b``, or None when inconsistent."""
        if len(b) != self.nrows:
            raise ValueError("right hand side has the wrong length")
        aug = QMatrix.from_rows(
            [list(self.row(i)) + [Fraction(b[i])] for i in range(self.nrows)]
        )
        m, pivots = aug._rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for r, c in enumerate(pivots):
            x[c] = m[r][self.ncols]
        return tuple(x)
