"""Lattice simplices with a vertex at the origin, and their quotient groups."""
from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Optional, Sequence, Tuple

from . import linalg
from .errors import (
    DegenerateSimplex,
    InvalidParams,
    InvalidPrime,
    LatticeError,
    NotPPower,
)
from .linalg import IntMatrix


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PPowerForm:
    """Normalized shape ``(E_k, B; 0, p E_r)`` of a p-power simplex.

    ``B`` is stored as k rows of r entries; when k = 0 it is the empty tuple.
    """

    p: int
    r: int
    B: IntMatrix

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.B)
        object.__setattr__(self, "B", B)
        if not is_prime(self.p):
            raise InvalidPrime(f"{self.p} is not prime")
        if self.r < 0 or any(len(row) != self.r for row in B):
            raise InvalidParams("B must have r columns")
        if any(not 0 <= x < self.p for row in B for x in row):
            raise InvalidParams(f"entries of B must lie in [0, {self.p})")

    @property
    def k(self) -> int:
        return len(self.B)

    @property
    def dim(self) -> int:
        return self.k + self.r

    def columns(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(zip(*self.B)) if self.k else tuple(() for _ in range(self.r))

    def matrix(self) -> IntMatrix:
        k, r, p = self.k, self.r, self.p
        rows = []
        for i in range(k):
            rows.append(tuple(int(i == j) for j in range(k)) + self.B[i])
        for i in range(r):
            rows.append((0,) * k + tuple(p if i == j else 0 for j in range(r)))
        return tuple(rows)

    def to_simplex(self) -> "LatticeSimplex":
        return LatticeSimplex(self.matrix(), p_power=self)

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "B": [list(row) for row in self.B]}


@dataclass(frozen=True)
class LatticeSimplex:
    """``conv{0, v_1, ..., v_d}`` stored as the matrix with columns ``v_i``."""

    matrix: IntMatrix
    p_power: Optional[PPowerForm] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        A = linalg.as_matrix(self.matrix)
        if len(A) != len(A[0]):
            raise DegenerateSimplex("vertex matrix must be square")
        if linalg.det(A) == 0:
            raise DegenerateSimplex("vertices are affinely dependent")
        object.__setattr__(self, "matrix", A)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def volume(self) -> int:
        """Normalized volume, i.e. ``|det A|``."""
        return abs(linalg.det(self.matrix))

    def vertices(self):
        d = self.dim
        return [(0,) * d] + [tuple(c) for c in zip(*self.matrix)]

    def column_lattice_basis(self) -> IntMatrix:
        return linalg.lattice_basis(self.matrix)

    def row_lattice_basis(self) -> IntMatrix:
        return linalg.lattice_basis(linalg.transpose(self.matrix))

    def to_json(self) -> dict:
        out = {"dim": self.dim, "columns": [list(c) for c in zip(*self.matrix)]}
        if self.p_power is not None:
            out["p_power"] = self.p_power.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeSimplex":
        try:
            d = int(obj["dim"])
            cols = obj["columns"]
        except (KeyError, TypeError, ValueError):
            raise LatticeError("simplex JSON needs 'dim' and 'columns'") from None
        if len(cols) != d or any(len(c) != d for c in cols):
            raise LatticeError("simplex JSON columns do not match dim")
        form = None
        if obj.get("p_power") is not None:
            pp = obj["p_power"]
            form = PPowerForm(int(pp["p"]), int(pp["r"]), linalg.as_matrix(pp["B"]) if pp["B"] else ())
            if form.matrix() != linalg.transpose(linalg.as_matrix(cols)):
                raise LatticeError("p_power block does not match the columns")
        return cls(linalg.transpose(linalg.as_matrix(cols)), p_power=form)


@dataclass(frozen=True)
class QuotientGroup:
    """Nontrivial elementary divisors in chain order ``m_r | ... | m_1``."""

    divisors: Tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for m in self.divisors:
            n *= m
        return n

    @property
    def cyclicity_rank(self) -> int:
        return len(self.divisors)

    def __str__(self):
        if not self.divisors:
            return "trivial"
        return " x ".join(f"Z_{m}" for m in self.divisors)


def from_vertices(points: Sequence[Sequence[int]]) -> LatticeSimplex:
    pts = [tuple(int(x) for x in p) for p in points]
    d = len(pts) - 1
    if d < 1 or any(len(p) != d for p in pts):
        raise DegenerateSimplex(f"need d+1 points in dimension d, got {len(pts)} points")
    o = pts[0]
    cols = [tuple(a - b for a, b in zip(p, o)) for p in pts[1:]]
    A = linalg.transpose(tuple(cols))
    return LatticeSimplex(A)


def quotient_group(simplex: LatticeSimplex) -> QuotientGroup:
    divs = linalg.snf(simplex.matrix).divisors
    return QuotientGroup(tuple(m for m in reversed(divs) if m > 1))


# --- p-power normal form ------------------------------------------------------

def _block_form(H: IntMatrix, p: int) -> Optional[PPowerForm]:
    d = len(H)
    diag = [H[i][i] for i in range(d)]
    r = sum(1 for x in diag if x != 1)
    k = d - r
    if any(x != 1 for x in diag[:k]) or any(x != p for x in diag[k:]):
        return None
    for i in range(k, d):
        for j in range(k, d):
            if H[i][j] != (p if i == j else 0):
                return None
    return PPowerForm(p, r, tuple(tuple(H[i][k:]) for i in range(k)))


def to_p_power_form(simplex: LatticeSimplex) -> PPowerForm:
    """Bring a simplex with quotient ``(Z_p)^r`` into the block shape."""
    if simplex.p_power is not None:
        return simplex.p_power
    divs = quotient_group(simplex).divisors
    if not divs:
        d = simplex.dim
        return PPowerForm(2, 0, tuple(() for _ in range(d)))
    p = divs[0]
    if any(m != p for m in divs) or not is_prime(p):
        raise NotPPower(f"quotient group {divs} is not elementary abelian")
    H = linalg.row_hnf(simplex.matrix).H
    d = len(H)
    # diagonal-1 columns of an HNF are unit vectors, so moving them to the
    # front by a simultaneous row/column permutation keeps the matrix in HNF
    order = [i for i in range(d) if H[i][i] == 1] + [i for i in range(d) if H[i][i] != 1]
    Hp = tuple(tuple(H[i][j] for j in order) for i in order)
    form = _block_form(linalg.row_hnf(Hp).H, p)
    if form is not None:
        return form
    for perm in permutations(range(d)):
        PA = tuple(simplex.matrix[i] for i in perm)
        form = _block_form(linalg.row_hnf(PA).H, p)
        if form is not None:
            return form
    raise RuntimeError("no block-shaped Hermite form found")  # pragma: no cover


def reduce_to_p_power(simplex: LatticeSimplex, p: int) -> LatticeSimplex:
    """Coarsen the row lattice to an intermediate lattice with quotient ``(Z_p)^r``."""
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    At = linalg.transpose(simplex.matrix)
    dec = linalg.snf(At)
    r = sum(1 for m in dec.divisors if m > 1)
    if r == 0 or dec.divisors[r - 1] % p:
        raise InvalidPrime(f"{p} does not divide the smallest nontrivial divisor")
    d = simplex.dim
    scale = [p if i < r else 1 for i in range(d)]
    US = tuple(tuple(u * s for u, s in zip(row, scale)) for row in dec.U)
    return LatticeSimplex(linalg.transpose(linalg.lattice_basis(US)))


def facet_simplex(form: PPowerForm, j: int) -> LatticeSimplex:
    """Facet opposite vertex ``j`` (1-based, among the last r) with coordinate j dropped."""
    d, k = form.dim, form.k
    if not k + 1 <= j <= d:
        raise IndexError(f"facet index {j} outside {k + 1}..{d}")
    c = j - k - 1
    B = tuple(row[:c] + row[c + 1:] for row in form.B)
    return PPowerForm(form.p, form.r - 1, B).to_simplex()


# --- named simplices ------------------------------------------------------------

DELTA8_B = ((1, 0, 1, 1, 2), (0, 1, 1, 2, 1), (1, 1, 2, 2, 2))
DELTA8 = PPowerForm(3, 5, DELTA8_B)
DELTA9 = PPowerForm(3, 5, ((0, 0, 0, 0, 0),) + DELTA8_B)


def white(p: int, q: int) -> LatticeSimplex:
    if not (1 <= p < q) or gcd(p, q) != 1:
        raise InvalidParams("white(p, q) needs 1 <= p < q with gcd(p, q) = 1")
    return from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, p, q)])


def reeve(p: int) -> LatticeSimplex:
    if p < 1:
        raise InvalidParams("reeve(p) needs p >= 1")
    return from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, p)])


def dilate(c: int, d: int) -> LatticeSimplex:
    """``c * S_d``."""
    if c < 1 or d < 1:
        raise InvalidParams("dilate(c, d) needs c >= 1 and d >= 1")
    return LatticeSimplex(linalg.diagonal([c] * d))


def construct_named(kind: str, *params: int) -> LatticeSimplex:
    builders = {
        "white": (white, 2),
        "reeve": (reeve, 1),
        "dilate": (dilate, 2),
        "delta8": (DELTA8.to_simplex, 0),
        "delta9": (DELTA9.to_simplex, 0),
    }
    if kind not in builders:
        raise InvalidParams(f"unknown simplex kind {kind!r}")
    fn, nargs = builders[kind]
    if len(params) != nargs:
        raise InvalidParams(f"{kind} takes {nargs} parameter(s), got {len(params)}")
    return fn(*params)
