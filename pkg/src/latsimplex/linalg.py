"""Exact integer linear algebra.

Matrices are tuples of row tuples holding Python ints, so every value is
exact and hashable.  Nothing here touches floating point.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

from .errors import LatticeError, SingularMatrix

IntMatrix = Tuple[Tuple[int, ...], ...]
IntVector = Tuple[int, ...]


def as_matrix(rows) -> IntMatrix:
    """Coerce nested sequences (lists, tuples, numpy arrays) to an IntMatrix."""
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise LatticeError(f"non-integer matrix entry {x!r}")
            r.append(int(x))
        out.append(tuple(r))
    if not out or not out[0]:
        raise LatticeError("matrix dimensions must be positive")
    if any(len(r) != len(out[0]) for r in out):
        raise LatticeError("ragged matrix rows")
    return tuple(out)


def identity(d: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def diagonal(entries: Sequence[int]) -> IntMatrix:
    d = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d))


def transpose(A: IntMatrix) -> IntMatrix:
    return tuple(zip(*A))


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    # returns (g, x, y) with x*a + y*b = g >= 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def _require_square_invertible(A: IntMatrix) -> int:
    if len(A) != len(A[0]):
        raise LatticeError(f"expected a square matrix, got {len(A)}x{len(A[0])}")
    D = det(A)
    if D == 0:
        raise SingularMatrix("matrix is singular")
    return D


@dataclass(frozen=True)
class HermiteDecomposition:
    H: IntMatrix
    U: IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``A = U * diag(divisors) * V`` with divisors in descending chain order.

    ``V_inv`` is carried along because the coset enumeration needs it and
    inverting afterwards would cost another elimination.
    """

    divisors: Tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix


@dataclass(frozen=True)
class RationalVector:
    numerators: Tuple[int, ...]
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise LatticeError("denominator must be positive")
        g = gcd(self.denominator, *self.numerators)
        if g != 1:
            object.__setattr__(self, "numerators", tuple(x // g for x in self.numerators))
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_fractions(cls, values):
        den = 1
        for v in values:
            den = den * v.denominator // gcd(den, v.denominator)
        return cls(tuple(int(v * den) for v in values), den)

    def as_fractions(self):
        return tuple(Fraction(n, self.denominator) for n in self.numerators)

    def is_integral(self) -> bool:
        return self.denominator == 1


def row_hnf(A: IntMatrix) -> HermiteDecomposition:
    """Row-style Hermite normal form ``H = U A`` of a square invertible matrix.

    H is upper triangular with positive diagonal and ``0 <= H[i][j] < H[j][j]``
    above the diagonal.
    """
    A = as_matrix(A)
    _require_square_invertible(A)
    d = len(A)
    M = [list(r) for r in A]
    U = [list(r) for r in identity(d)]
    for j in range(d):
        for i in range(j + 1, d):
            b = M[i][j]
            if b == 0:
                continue
            a = M[j][j]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            rj, ri = M[j], M[i]
            M[j] = [x * s + y * t for s, t in zip(rj, ri)]
            M[i] = [-bg * s + ag * t for s, t in zip(rj, ri)]
            uj, ui = U[j], U[i]
            U[j] = [x * s + y * t for s, t in zip(uj, ui)]
            U[i] = [-bg * s + ag * t for s, t in zip(uj, ui)]
        if M[j][j] < 0:
            M[j] = [-x for x in M[j]]
            U[j] = [-x for x in U[j]]
        piv = M[j][j]
        for i in range(j):
            q = M[i][j] // piv
            if q:
                M[i] = [s - q * t for s, t in zip(M[i], M[j])]
                U[i] = [s - q * t for s, t in zip(U[i], U[j])]
    return HermiteDecomposition(tuple(map(tuple, M)), tuple(map(tuple, U)))


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """Canonical lower-triangular basis of the column lattice ``M Z^d``."""
    return transpose(row_hnf(transpose(as_matrix(M))).H)


def snf(A: IntMatrix) -> SmithDecomposition:
    A = as_matrix(A)
    _require_square_invertible(A)
    d = len(A)
    S = [list(r) for r in A]
    U = [list(r) for r in identity(d)]      # A = U S V throughout
    V = [list(r) for r in identity(d)]
    Vi = [list(r) for r in identity(d)]     # V^-1

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]
        for row in Vi:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        S[i] = [s + c * t for s, t in zip(S[i], S[j])]
        for row in U:
            row[j] -= c * row[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in S:
            row[i] += c * row[j]
        V[j] = [s - c * t for s, t in zip(V[j], V[i])]
        for row in Vi:
            row[i] += c * row[j]

    for t in range(d):
        while True:
            piv = None
            for i in range(t, d):
                for j in range(t, d):
                    if S[i][j] and (piv is None or abs(S[i][j]) < abs(S[piv[0]][piv[1]])):
                        piv = (i, j)
            i, j = piv
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, d):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, d):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, d) for j in range(t + 1, d) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            for row in U:
                row[t] = -row[t]

    # ascending chain -> descending by reversing both index orders
    divisors = tuple(S[i][i] for i in reversed(range(d)))
    U = tuple(tuple(reversed(row)) for row in U)
    V = tuple(tuple(r) for r in reversed(V))
    Vi = tuple(tuple(reversed(row)) for row in Vi)
    return SmithDecomposition(divisors, U, V, Vi)


def solve_exact(A: IntMatrix, z: Sequence[int]) -> RationalVector:
    """Exact solution of ``A x = z`` for square invertible A."""
    A = as_matrix(A)
    d = len(A)
    if len(z) != d:
        raise LatticeError("right-hand side has wrong length")
    _require_square_invertible(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(b))] for row, b in zip(A, z)]
    for c in range(d):
        p = next(i for i in range(c, d) if M[i][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(d):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return RationalVector.from_fractions([M[i][d] for i in range(d)])


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the shared text format: a line with ``d`` then d rows of d ints."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise LatticeError("first line must hold the dimension d")
    try:
        d = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise LatticeError(f"bad integer in matrix text: {exc}") from None
    if d <= 0:
        raise LatticeError("dimension must be positive")
    if len(rows) != d:
        raise LatticeError(f"expected {d} rows, got {len(rows)}")
    if any(len(r) != d for r in rows):
        raise LatticeError("ragged matrix rows")
    return as_matrix(rows)


def format_matrix_text(A: IntMatrix) -> str:
    if len(A) != len(A[0]):
        raise LatticeError("text format holds square matrices only")
    return "\n".join([str(len(A))] + [" ".join(map(str, row)) for row in A]) + "\n"
