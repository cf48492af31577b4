"""Abelianized endomorphisms as exact integer matrices, and characteristic polynomials.

Convention, used everywhere: column ``i`` of a matrix is the exponent vector
of the image of basis element ``i``.  So the entry in row ``j``, column ``i``
of ``abelianization_matrix(phi)`` is the exponent sum of generator ``j`` in
``phi(x_i)``.
"""

from __future__ import annotations

from math import factorial
from typing import Sequence

from .errors import NotInSubgroup, NotInvariant, ShapeMismatch
from .graphs import SubgroupGraph, rewrite_in_basis
from .polynomials import IntPoly
from .words import Endomorphism, apply

# Bareiss evaluation/interpolation is quartic; beyond this size FLINT takes over.
NATIVE_CHARPOLY_MAX = 16


class IntMatrix:
    """Square matrix of Python integers (immutable)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if any(len(row) != len(rows) for row in rows):
            raise ShapeMismatch("IntMatrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> IntMatrix:
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if other.n != self.n:
            raise ShapeMismatch(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows])

    def transpose(self) -> IntMatrix:
        return IntMatrix(list(zip(*self.rows)))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.rows == other.rows
        if isinstance(other, (list, tuple)):
            return self.rows == tuple(tuple(row) for row in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def abelianization_matrix(phi: Endomorphism) -> IntMatrix:
    return IntMatrix.from_columns([w.exponent_sums() for w in phi.images])


def restriction(phi: Endomorphism, g: SubgroupGraph) -> Endomorphism:
    """``phi`` restricted to the subgroup of ``g``, written over ``g.basis``."""
    n = len(g.basis)
    images = []
    for h in g.basis:
        try:
            images.append(rewrite_in_basis(g, apply(phi, h)))
        except NotInSubgroup:
            raise NotInvariant(f"phi({h}) leaves the subgroup") from None
    if not images:
        return Endomorphism(0, [])
    return Endomorphism(n, images)


def restriction_matrix(phi: Endomorphism, g: SubgroupGraph) -> IntMatrix:
    return abelianization_matrix(restriction(phi, g))


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    a = [list(row) for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k]), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _falling(j: int) -> list[int]:
    """Coefficients of ``t (t-1) ... (t-j+1)``, ascending."""
    poly = [1]
    for r in range(j):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return poly


def _charpoly_interpolate(m: IntMatrix) -> IntPoly:
    n = m.n
    values = []
    for k in range(n + 1):
        shifted = [[(k if i == j else 0) - m.rows[i][j] for j in range(n)] for i in range(n)]
        values.append(bareiss_det(shifted))
    # Newton forward differences at 0, 1, ..., n
    diffs = []
    level = values
    while level:
        diffs.append(level[0])
        level = [b - a for a, b in zip(level, level[1:])]
    total = [0] * (n + 1)
    nfact = factorial(n)
    for j, d in enumerate(diffs):
        if d:
            scale = d * (nfact // factorial(j))
            for i, c in enumerate(_falling(j)):
                total[i] += scale * c
    return IntPoly([c // nfact for c in total])


def _charpoly_flint(m: IntMatrix) -> IntPoly:
    import flint

    return IntPoly(int(c) for c in flint.fmpz_mat(m.tolist()).charpoly().coeffs())


def char_poly(m: IntMatrix) -> IntPoly:
    """``det(tI - M)``, monic and exact."""
    if m.n > NATIVE_CHARPOLY_MAX:
        return _charpoly_flint(m)
    return _charpoly_interpolate(m)
