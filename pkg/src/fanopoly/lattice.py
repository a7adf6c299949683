"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints (arbitrary precision); matrices are tuples
of row tuples.  Nothing here touches floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import LatticeError, SingularMatrixError

LatticePoint = tuple[int, ...]
IntegerMatrix = tuple[tuple[int, ...], ...]
RationalVector = tuple[Fraction, ...]

__all__ = [
    "LatticePoint",
    "IntegerMatrix",
    "UnimodularMap",
    "primitive_part",
    "dot",
    "add",
    "sub",
    "neg",
    "scale",
    "zero",
    "unit",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "determinant",
    "solve_exact",
    "rational_inverse",
    "integer_inverse",
    "nullspace",
    "rank",
    "random_unimodular",
]


def _vec(v: Sequence[int]) -> LatticePoint:
    return tuple(int(x) for x in v)


def _mat(M: Sequence[Sequence[int]]) -> IntegerMatrix:
    rows = tuple(tuple(r) for r in M)
    if rows and len({len(r) for r in rows}) != 1:
        raise LatticeError("matrix rows have different lengths")
    return rows


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> LatticePoint:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> LatticePoint:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence[int]) -> LatticePoint:
    return tuple(-a for a in u)


def scale(c: int, u: Sequence[int]) -> LatticePoint:
    return tuple(c * a for a in u)


def zero(d: int) -> LatticePoint:
    return (0,) * d


def unit(d: int, i: int) -> LatticePoint:
    """The standard basis vector e_{i+1} of Z^d (0-based ``i``)."""
    return tuple(1 if j == i else 0 for j in range(d))


def identity(d: int) -> IntegerMatrix:
    return tuple(unit(d, i) for i in range(d))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def matvec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def primitive_part(v: Sequence[int]) -> LatticePoint:
    """Divide ``v`` by the gcd of its entries.

    >>> primitive_part((2, 4, 6))
    (1, 2, 3)
    """
    v = _vec(v)
    g = math.gcd(*v)
    if g == 0:
        raise LatticeError("the zero vector has no primitive part")
    return tuple(x // g for x in v)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    A = [list(r) for r in _mat(M)]
    n = len(A)
    if any(len(r) != n for r in A):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def _minor(M: IntegerMatrix, i: int, j: int) -> IntegerMatrix:
    return tuple(
        tuple(x for c, x in enumerate(row) if c != j)
        for r, row in enumerate(M)
        if r != i
    )


def _adjugate(M: IntegerMatrix) -> IntegerMatrix:
    n = len(M)
    if n == 1:
        return ((1,),)
    # adj(M)[j][i] = (-1)^(i+j) det(minor(i, j))
    cof = [[(-1) ** (i + j) * determinant(_minor(M, i, j)) for j in range(n)] for i in range(n)]
    return transpose(cof)


def rational_inverse(M: Sequence[Sequence[int]]) -> tuple[RationalVector, ...]:
    """Inverse over Q via the adjugate."""
    M = _mat(M)
    if any(len(r) != len(M) for r in M):
        raise LatticeError("inverse of a non-square matrix")
    det = determinant(M)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    adj = _adjugate(M)
    return tuple(tuple(Fraction(x, det) for x in row) for row in adj)


def integer_inverse(M: Sequence[Sequence[int]]) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    M = _mat(M)
    det = determinant(M)
    if det not in (1, -1):
        raise LatticeError(f"matrix is not unimodular (det = {det})")
    return tuple(tuple(det * x for x in row) for row in _adjugate(M))


def solve_exact(M: Sequence[Sequence[int]], b: Sequence[int]) -> RationalVector:
    """Return the unique rational ``x`` with ``M x = b``.

    ``M`` is given by rows.  To express ``b`` in a basis of vectors, pass the
    vectors as columns, i.e. ``solve_exact(transpose(vectors), b)``.
    """
    M = _mat(M)
    n = len(M)
    if any(len(r) != n for r in M):
        raise LatticeError("solve_exact needs a square matrix")
    if len(b) != n:
        raise LatticeError("right-hand side has the wrong length")
    A = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(A[r][n] for r in range(n))


def _echelon(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer Gauss-Jordan form: each pivot column is zero outside its pivot row."""
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        prow = A[r]
        p = prow[col]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                row = [x * p - y * f for x, y in zip(A[i], prow)]
                g = math.gcd(*row)
                A[i] = [x // g for x in row] if g > 1 else row
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return A[: len(pivots)], pivots


def rank(rows: Sequence[Sequence[int]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(_echelon(rows, len(rows[0]))[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[LatticePoint]:
    """A basis of primitive integer vectors of ``{x : rows . x = 0}`` over Q."""
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    A, pivots = _echelon(rows, ncols)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        L = 1
        for row, c in zip(A, pivots):
            if row[f]:
                L = L * row[c] // math.gcd(L, row[c])
        x = [0] * ncols
        x[f] = L
        for row, c in zip(A, pivots):
            x[c] = -L * row[f] // row[c]
        basis.append(primitive_part(x))
    return basis


@dataclass(frozen=True)
class UnimodularMap:
    """A GL(d, Z) element acting on column vectors by ``x -> M x``."""

    matrix: IntegerMatrix

    def __post_init__(self):
        det = determinant(self.matrix)
        if det not in (1, -1):
            raise LatticeError(f"not unimodular: det = {det}")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int]) -> LatticePoint:
        return matvec(self.matrix, x)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(matmul(self.matrix, other.matrix))

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(integer_inverse(self.matrix))

    def dual(self, u: Sequence[int]) -> LatticePoint:
        """Transport a linear functional: ``<dual(u), M x> = <u, x>``."""
        return matvec(transpose(integer_inverse(self.matrix)), u)

    @classmethod
    def identity(cls, d: int) -> "UnimodularMap":
        return cls(identity(d))


def random_unimodular(d: int, seed: int, max_entry: int = 10, steps: int | None = None) -> UnimodularMap:
    """Seeded product of elementary shears and row swaps.

    Operations that would push an entry above ``max_entry`` in absolute value
    are skipped, so the result always respects the cap.
    """
    if d < 1:
        raise LatticeError("dimension must be positive")
    rng = random.Random(seed)
    M = [list(r) for r in identity(d)]
    steps = 6 * d if steps is None else steps
    if d == 1:
        if rng.random() < 0.5:
            M[0][0] = -1
        return UnimodularMap(_mat(M))
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        if rng.random() < 0.25:
            M[i], M[j] = M[j], M[i]
            continue
        c = rng.choice((-1, 1))
        row = [a + c * b for a, b in zip(M[i], M[j])]
        if max(abs(a) for a in row) <= max_entry:
            M[i] = row
    if rng.random() < 0.5:
        M[0] = [-a for a in M[0]]
    return UnimodularMap(_mat(M))
