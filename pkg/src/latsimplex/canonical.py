"""Canonical forms and equivalence tests for lattice simplices.

Two simplices with the origin as a vertex are unimodularly equivalent iff
their row lattices ``A^T Z^d`` agree up to a coordinate permutation ``P`` and
one of the d+1 re-rooting maps ``U_k``.  The canonical form is the
lexicographically smallest (row-major) lower-triangular canonical basis of
``P U_k A^T Z^d`` over all such choices.

The leading j rows of that basis only depend on the first j coordinates in
the permuted order (they are the Hermite basis of the projection onto those
coordinates), so the minimum is found level by level, keeping only the
prefixes that tie for the smallest row so far.
"""
from dataclasses import dataclass
from itertools import permutations
from math import factorial

from . import linalg
from .errors import DimensionMismatch, PermCapExceeded
from .linalg import IntMatrix, _xgcd
from .simplex import LatticeSimplex

DEFAULT_PERM_CAP = factorial(9) * 10


@dataclass(frozen=True)
class CanonicalForm:
    matrix: IntMatrix


def reroot(M: IntMatrix, k: int) -> IntMatrix:
    """``U_k M``: subtract row k from every other row and negate row k (k >= 1)."""
    if k == 0:
        return M
    base = M[k - 1]
    return tuple(
        tuple(-x for x in base) if i == k - 1 else tuple(a - b for a, b in zip(row, base))
        for i, row in enumerate(M)
    )


def _check_cap(d, perm_cap):
    need = factorial(d) * (d + 1)
    if need > perm_cap:
        raise PermCapExceeded(perm_cap, need)


class _Prefix:
    __slots__ = ("k", "used", "pivots", "rest")

    def __init__(self, k, used, pivots, rest):
        self.k = k
        self.used = used
        self.pivots = pivots
        self.rest = rest

    def extend(self, c):
        piv = None
        rest = []
        for v in self.rest:
            if v[c] == 0:
                rest.append(v)
            elif piv is None:
                piv = v
            else:
                a, b = piv[c], v[c]
                g, x, y = _xgcd(a, b)
                ag, bg = a // g, b // g
                rest.append([ag * t - bg * s for s, t in zip(piv, v)])
                piv = [x * s + y * t for s, t in zip(piv, v)]
        if piv[c] < 0:
            piv = [-x for x in piv]
        g = piv[c]
        pivots = []
        row = []
        for l in self.pivots:
            q = l[c] // g
            if q:
                l = [s - q * t for s, t in zip(l, piv)]
            pivots.append(l)
            row.append(l[c])
        pivots.append(piv)
        row.append(g)
        return tuple(row), _Prefix(self.k, self.used + (c,), pivots, rest)

    def key(self, d):
        free = [c for c in range(d) if c not in self.used]
        return (self.k, frozenset(self.used), tuple(tuple(l[c] for c in free) for l in self.pivots))


def _roots(A: IntMatrix):
    At = linalg.transpose(A)
    d = len(A)
    for k in range(d + 1):
        M = reroot(At, k)
        yield _Prefix(k, (), [], [list(col) for col in zip(*M)])


def _search(A: IntMatrix, target=None):
    """Level-wise minimization; with ``target`` only prefixes matching it survive."""
    d = len(A)
    frontier = list(_roots(A))
    rows = []
    for level in range(d):
        best = target[level] if target is not None else None
        children = {}
        for st in frontier:
            for c in range(d):
                if c in st.used:
                    continue
                row, child = st.extend(c)
                if best is None or row < best:
                    if target is not None:
                        continue
                    best = row
                    children = {}
                if row == best:
                    children.setdefault(child.key(d), child)
        if not children:
            return None
        frontier = list(children.values())
        rows.append(best)
    return tuple(r + (0,) * (d - len(r)) for r in rows)


def canonical_form(simplex: LatticeSimplex, perm_cap: int = DEFAULT_PERM_CAP) -> CanonicalForm:
    _check_cap(simplex.dim, perm_cap)
    return CanonicalForm(_search(simplex.matrix))


def are_equivalent(a: LatticeSimplex, b: LatticeSimplex, perm_cap: int = DEFAULT_PERM_CAP) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    _check_cap(a.dim, perm_cap)
    if a.volume != b.volume:
        return False
    target = linalg.lattice_basis(linalg.transpose(a.matrix))
    target = tuple(row[: i + 1] for i, row in enumerate(target))
    return _search(b.matrix, target) is not None


def canonical_form_bruteforce(simplex: LatticeSimplex) -> CanonicalForm:
    """Literal minimum over every permutation and re-rooting; small d only."""
    At = linalg.transpose(simplex.matrix)
    d = simplex.dim
    best = None
    for k in range(d + 1):
        M = reroot(At, k)
        for perm in permutations(range(d)):
            L = linalg.lattice_basis(tuple(M[i] for i in perm))
            if best is None or L < best:
                best = L
    return CanonicalForm(best)
