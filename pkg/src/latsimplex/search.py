"""Candidate generation, censuses of empty p-power simplices, and bounds.

A p-power simplex of rank r in dimension d = k + r is given by a k x r block
``B`` with entries in ``[0, p)``.  Censuses enumerate r-subsets of a pool of
admissible columns; column order inside ``B`` is irrelevant because permuting
columns is a coordinate permutation.
"""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from math import comb, gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .canonical import DEFAULT_PERM_CAP, canonical_form
from .emptiness import DEFAULT_ORDER_CAP, empty_mask
from .errors import CapExceeded, InvalidParams, InvalidPrime, OrderCapExceeded
from .linalg import IntMatrix
from .simplex import DELTA8, PPowerForm, is_prime

DEFAULT_ENUMERATION_CAP = 10**7
BATCH = 4096


def _require_prime(p):
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")


# --- column pools -----------------------------------------------------------------

@dataclass(frozen=True)
class ColumnPool:
    p: int
    k: int
    columns: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.columns)

    def matrix(self) -> List[List[int]]:
        """The pool as a k x n matrix (one column per pool vector)."""
        return [list(row) for row in zip(*self.columns)] if self.columns else []


def _column_ok(v) -> bool:
    support = [x for x in v if x]
    if len(support) < 2:
        return False
    if len(support) == 2 and gcd(*support) != 1:
        return False
    return True


def admissible_columns(p: int, k: int) -> ColumnPool:
    """All vectors of ``{0..p-1}^k`` that may occur as a column of an empty ``B``."""
    _require_prime(p)
    if k < 0:
        raise InvalidParams("k must be nonnegative")
    cols = tuple(v for v in product(range(p), repeat=k) if _column_ok(v))
    return ColumnPool(p, k, cols)


def pool_size(p: int, k: int) -> int:
    """Closed-form size of ``admissible_columns(p, k)``."""
    if k < 2:
        return 0
    bad_pairs = sum(1 for a in range(1, p) for b in range(1, p) if gcd(a, b) > 1)
    return p**k - 1 - k * (p - 1) - comb(k, 2) * bad_pairs


# --- pruning ------------------------------------------------------------------------

def _multiple_mod(u, v, p) -> bool:
    return any(all((mu * a - b) % p == 0 for a, b in zip(u, v)) for mu in range(1, p))


def subset_admissible(B, p: int) -> bool:
    """Subset-level necessary conditions for emptiness of ``(E, B; 0, pE)``.

    Rejects two columns that are multiples of each other mod p, and any
    collection of at most ``min(p, r)`` columns whose row sums all vanish
    mod p.  Both patterns exhibit an explicit non-vertex lattice point.
    """
    cols = [tuple(c) for c in zip(*B)] if B and len(B[0]) else []
    r = len(cols)
    for u, v in combinations(cols, 2):
        if _multiple_mod(u, v, p):
            return False
    for t in range(1, min(p, r) + 1):
        for sub in combinations(cols, t):
            if all(sum(x) % p == 0 for x in zip(*sub)):
                return False
    return True


def _pruned_combinations(columns, p: int, r: int):
    """Lexicographic r-subsets (as index tuples) passing ``subset_admissible``."""
    n = len(columns)
    tmax = min(p, r)
    neg = [tuple((-x) % p for x in c) for c in columns]
    clash = [[i != j and _multiple_mod(columns[i], columns[j], p) for j in range(n)] for i in range(n)]
    zero = tuple(0 for _ in columns[0]) if columns else ()

    def rec(start, chosen, sums):
        if len(chosen) == r:
            yield tuple(chosen)
            return
        for c in range(start, n - (r - len(chosen)) + 1):
            if any(clash[c][i] for i in chosen):
                continue
            if tmax >= 1 and columns[c] == zero:
                continue
            if any(neg[c] in sums[s] for s in range(1, tmax)):
                continue
            new = [set(x) for x in sums]
            for s in range(tmax - 2, 0, -1):
                new[s + 1].update(tuple((a + b) % p for a, b in zip(v, columns[c])) for v in sums[s])
            if tmax >= 2:
                new[1].add(columns[c])
            chosen.append(c)
            yield from rec(c + 1, chosen, new)
            chosen.pop()

    yield from rec(0, [], [set() for _ in range(max(tmax, 1))])


# --- constructions --------------------------------------------------------------------

def binary_construction(p: int, k: int, ell: int) -> PPowerForm:
    """Empty p-power simplex of rank ``ell`` from distinct 0/1 columns of weight >= 2."""
    _require_prime(p)
    if k < 2 or not 1 <= ell <= 2**k - k - 1:
        raise InvalidParams(f"need k >= 2 and 1 <= ell <= {max(0, 2**k - k - 1)}")
    cols = [v for v in product((0, 1), repeat=k) if sum(v) >= 2][:ell]
    return PPowerForm(p, ell, tuple(zip(*cols)))


def lift3(form: PPowerForm) -> PPowerForm:
    """Lift an empty 3-power form ``(k, ell)`` to one of rank ``2 ell + k`` in dimension ``k + 1 + m``."""
    if form.p != 3:
        raise InvalidParams("lift3 needs a 3-power form")
    k, ell = form.k, form.r
    rows = []
    for i in range(k):
        unit = tuple(int(i == j) for j in range(k))
        rows.append(unit + form.B[i] + form.B[i])
    rows.append((1,) * k + (1,) * ell + (2,) * ell)
    return PPowerForm(3, 2 * ell + k, tuple(rows))


# --- census -----------------------------------------------------------------------------

@dataclass
class SearchReport:
    params: Dict
    pool: List[List[int]]
    pool_size: int
    candidates_total: int
    candidates_enumerated: int
    prune_killed: int
    empty_found: List[IntMatrix]
    equivalence_classes: List[Dict] = field(default_factory=list)
    zero_row_survivors: int = 0
    timings_ms: Dict[str, float] = field(default_factory=dict)
    config: Dict = field(default_factory=dict)
    version: str = __version__

    def forms(self) -> List[PPowerForm]:
        r = self.params["r"]
        return [PPowerForm(self.params["p"], r, B) for B in self.empty_found]

    def to_json(self, timings: bool = True) -> Dict:
        out = {
            "params": self.params,
            "pool": self.pool,
            "counts": {
                "pool_size": self.pool_size,
                "candidates_total": self.candidates_total,
                "candidates_enumerated": self.candidates_enumerated,
                "prune_killed": self.prune_killed,
                "empty": len(self.empty_found),
                "classes": len(self.equivalence_classes),
                "zero_row_survivors": self.zero_row_survivors,
            },
            "survivors": [[list(row) for row in B] for B in self.empty_found],
            "classes": self.equivalence_classes,
            "config": self.config,
            "version": self.version,
        }
        if timings:
            out["timings_ms"] = self.timings_ms
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=1, sort_keys=True)

    def save(self, path: str) -> None:
        # reports are write-once artifacts
        with open(path, "x") as fh:
            fh.write(self.dumps())
            fh.write("\n")


def _evaluate(args):
    p, pool_arr, idx, order_cap = args
    blocks = pool_arr[np.asarray(idx, dtype=np.int64)].transpose(0, 2, 1)
    return empty_mask(p, blocks, order_cap)


def census(
    p: int,
    d: int,
    r: int,
    prune: bool = False,
    dedupe: bool = False,
    order_cap: int = DEFAULT_ORDER_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    perm_cap: int = DEFAULT_PERM_CAP,
    workers: int = 1,
    stop_at_first: bool = False,
) -> SearchReport:
    """Find every empty p-power d-simplex of rank r whose ``B`` columns come from the pool."""
    _require_prime(p)
    if d < 1 or not 0 <= r <= d:
        raise InvalidParams("need d >= 1 and 0 <= r <= d")
    k = d - r
    t0 = time.perf_counter()
    pool = admissible_columns(p, k)
    n = len(pool)
    total = comb(n, r)
    if total > enumeration_cap:
        raise CapExceeded("enumeration_cap", enumeration_cap, total)
    if p**r > order_cap:
        raise OrderCapExceeded(order_cap, p**r)
    pool_arr = np.array(pool.columns, dtype=np.int64).reshape(n, k)

    if prune:
        candidates = _pruned_combinations(pool.columns, p, r)
    else:
        candidates = combinations(range(n), r)
    batches = iter(lambda: list(islice(candidates, BATCH)), [])

    enumerated = 0
    survivors = []
    t1 = time.perf_counter()
    if workers > 1 and not stop_at_first:
        with ProcessPoolExecutor(workers) as ex:
            pending = []
            for b in batches:
                pending.append((b, ex.submit(_evaluate, (p, pool_arr, b, order_cap))))
            for b, fut in pending:
                enumerated += len(b)
                mask = fut.result()
                survivors.extend(c for c, ok in zip(b, mask) if ok)
    else:
        for b in batches:
            mask = _evaluate((p, pool_arr, b, order_cap))
            if stop_at_first and mask.any():
                hit = int(np.argmax(mask))
                enumerated += hit + 1
                survivors.append(b[hit])
                break
            enumerated += len(b)
            survivors.extend(c for c, ok in zip(b, mask) if ok)
    t2 = time.perf_counter()

    found = [tuple(zip(*(pool.columns[i] for i in c))) if k else () for c in survivors]
    if r == 0:
        found = [tuple(() for _ in range(k))]
    found = [tuple(tuple(row) for row in B) for B in found]

    classes = []
    if dedupe:
        index = {}
        for B in found:
            cf = canonical_form(PPowerForm(p, r, B).to_simplex(), perm_cap).matrix
            if cf not in index:
                index[cf] = len(classes)
                classes.append({"canonical": [list(x) for x in cf],
                                "representative": [list(x) for x in B], "members": 0})
            classes[index[cf]]["members"] += 1
    t3 = time.perf_counter()

    return SearchReport(
        params={"p": p, "d": d, "r": r, "k": k, "prune": prune, "dedupe": dedupe,
                "stop_at_first": stop_at_first},
        pool=pool.matrix(),
        pool_size=n,
        candidates_total=total,
        candidates_enumerated=enumerated,
        prune_killed=(total - enumerated) if prune and not stop_at_first else 0,
        empty_found=found,
        equivalence_classes=classes,
        zero_row_survivors=sum(1 for B in found if any(not any(row) for row in B)),
        timings_ms={"pool": 1e3 * (t1 - t0), "emptiness": 1e3 * (t2 - t1),
                    "canonicalization": 1e3 * (t3 - t2)},
        config={"order_cap": order_cap, "enumeration_cap": enumeration_cap,
                "perm_cap": perm_cap, "workers": workers},
    )


# --- bounds -------------------------------------------------------------------------------

def floor_log(d: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= d:
        e += 1
    return e


@dataclass(frozen=True)
class BoundSheet:
    p: int
    d: int
    log_bound: int
    pool_bound: int
    linear_bound: Optional[int]

    @property
    def combined(self) -> int:
        return min(b for b in (self.log_bound, self.pool_bound, self.linear_bound) if b is not None)


def crp_upper(p: int, d: int) -> BoundSheet:
    """Upper bounds for the maximal rank of an empty p-power d-simplex."""
    _require_prime(p)
    if d < 1:
        raise InvalidParams("d must be positive")
    pool_bound = max(r for r in range(d + 1) if r == 0 or pool_size(p, d - r) >= r)
    return BoundSheet(
        p=p,
        d=d,
        log_bound=d - floor_log(d, p) - 1,
        pool_bound=pool_bound,
        linear_bound=d - 3 if d >= 4 else None,
    )


@dataclass(frozen=True)
class CrpResult:
    p: int
    d: int
    value: int
    witness: PPowerForm
    exact: bool
    upper: int
    skipped: Tuple[int, ...] = ()


def crp_lower(
    p: int,
    d: int,
    order_cap: int = DEFAULT_ORDER_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> CrpResult:
    """Largest rank with an empty p-power d-simplex, searched downward from the upper bound.

    Ranks whose census would break a cap are skipped; the result is then only
    a lower bound (``exact`` is False).
    """
    upper = crp_upper(p, d).combined
    skipped = []
    for r in range(upper, -1, -1):
        try:
            rep = census(p, d, r, prune=True, order_cap=order_cap,
                         enumeration_cap=enumeration_cap, stop_at_first=True)
        except CapExceeded:
            skipped.append(r)
            continue
        if rep.empty_found:
            return CrpResult(p, d, r, rep.forms()[0], not skipped, upper, tuple(skipped))
    raise AssertionError("rank 0 always admits the unimodular simplex")  # pragma: no cover


def rank_bound_any_prime(d: int) -> int:
    """Upper bound on the rank of any empty d-simplex, valid for every prime."""
    if d >= 4:
        return d - 3
    return max(0, d - 2)


@dataclass(frozen=True)
class TableRow:
    d: int
    lower_by_prime: Dict[int, int]
    exact_by_prime: Dict[int, bool]
    lower: int
    upper: int

    @property
    def bracket(self) -> Tuple[int, ...]:
        return tuple(range(self.lower, self.upper + 1))


def cre_table(
    max_dim: int,
    primes=(2, 3),
    order_cap: int = DEFAULT_ORDER_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> List[TableRow]:
    """Bracket the maximal rank of empty d-simplices for ``d = 1..max_dim``."""
    by_prime = {}
    for d in range(1, max_dim + 1):
        for p in primes:
            by_prime[d, p] = crp_lower(p, d, order_cap, enumeration_cap)
    lower = {}
    upper = {}
    for d in range(1, max_dim + 1):
        lo = max(by_prime[d, p].value for p in primes)
        lower[d] = max(lo, lower.get(d - 1, 0))
        up = rank_bound_any_prime(d)
        if d > 1:
            up = min(up, upper[d - 1] + 1)
        upper[d] = up
    # rank can drop by at most one per dimension, so lower bounds propagate down
    for d in range(max_dim, 1, -1):
        lower[d - 1] = max(lower[d - 1], lower[d] - 1)
    return [
        TableRow(
            d,
            {p: by_prime[d, p].value for p in primes},
            {p: by_prime[d, p].exact for p in primes},
            lower[d],
            upper[d],
        )
        for d in range(1, max_dim + 1)
    ]
