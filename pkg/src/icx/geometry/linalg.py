"""Exact linear algebra over the rationals.

Matrices are plain sequences of rows; every entry is promoted to a Fraction so
nothing downstream has to care whether the caller passed ints.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from ..rationals import Number, QVector, ZPoint

Matrix = List[List[Fraction]]


def dot(a: Sequence[Number], b: Sequence[Number]) -> Fraction:
    return Fraction(sum(Fraction(x) * y for x, y in zip(a, b)))


def _as_matrix(rows: Sequence[Sequence[Number]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence[Number]], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form.

    Returns:
        (matrix, pivot_columns): zero rows are dropped from the matrix.
    """

    matrix = _as_matrix(rows)
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0

    pivots: List[int] = []
    row = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(row, len(matrix)) if matrix[r][col] != 0), None)
        if pivot_row is None:
            continue

        matrix[row], matrix[pivot_row] = matrix[pivot_row], matrix[row]
        pivot = matrix[row][col]
        matrix[row] = [v / pivot for v in matrix[row]]

        for r in range(len(matrix)):
            if r != row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[row])]

        pivots.append(col)
        row += 1
        if row == len(matrix):
            break

    return matrix[:row], pivots


def rank(rows: Sequence[Sequence[Number]], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def null_space(rows: Sequence[Sequence[Number]], ncols: int) -> List[QVector]:
    """Basis of {v : rows · v = 0}, one vector per free column."""

    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]

    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]

    basis = []
    for free_col in free:
        vector = [Fraction(0)] * ncols
        vector[free_col] = Fraction(1)
        for r, pivot_col in enumerate(pivots):
            vector[pivot_col] = -reduced[r][free_col]
        basis.append(tuple(vector))

    return basis


def solve_square(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> Optional[QVector]:
    """Solve a square system exactly; None when the matrix is singular."""

    n = len(matrix)
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented, n)

    if pivots != list(range(n)):
        return None

    return tuple(reduced[i][n] for i in range(n))


def primitive_integer_vector(vector: Sequence[Number]) -> ZPoint:
    """Scale a nonzero rational vector to coprime integers, keeping its direction."""

    fractions = [Fraction(v) for v in vector]
    denominator = reduce(lcm, (v.denominator for v in fractions), 1)
    integers = [int(v * denominator) for v in fractions]
    divisor = reduce(gcd, (abs(v) for v in integers), 0)

    if divisor == 0:
        raise ValueError("The zero vector has no primitive direction")

    return tuple(v // divisor for v in integers)


def sign_normalized(vector: ZPoint) -> ZPoint:
    """Flip the sign so the first nonzero entry is positive."""

    for v in vector:
        if v != 0:
            return vector if v > 0 else tuple(-x for x in vector)
    return vector
