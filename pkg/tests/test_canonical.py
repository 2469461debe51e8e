import pytest

from latsimplex import linalg
from latsimplex.canonical import (
    are_equivalent,
    canonical_form,
    canonical_form_bruteforce,
    reroot,
)
from latsimplex.emptiness import is_empty, is_hollow
from latsimplex.errors import DimensionMismatch, PermCapExceeded
from latsimplex.simplex import DELTA8, LatticeSimplex, dilate, from_vertices, quotient_group, white

from oracles import random_matrix, random_unimodular, seeded


def move(rng, simplex):
    """Random unimodular image plus translation, with the vertex list shuffled."""
    d = simplex.dim
    W = random_unimodular(rng, d)
    perm = list(range(d))
    rng.shuffle(perm)
    verts = [linalg.matvec(W, v) for v in simplex.vertices()]
    verts = [tuple(v[i] for i in perm) for v in verts]
    t = tuple(rng.randint(-4, 4) for _ in range(d))
    verts = [tuple(a + b for a, b in zip(v, t)) for v in verts]
    rng.shuffle(verts)
    return from_vertices(verts)


def test_standard_simplex_canonical():
    for d in range(1, 6):
        assert canonical_form(LatticeSimplex(linalg.identity(d))).matrix == linalg.identity(d)


def test_reroot_is_an_involution_up_to_sign():
    M = ((1, 2, 3), (4, 5, 6), (7, 8, 10))
    assert reroot(M, 0) == M
    assert reroot(reroot(M, 2), 2) == M


def test_matches_bruteforce():
    rng = seeded(40)
    for _ in range(200):
        d = rng.randint(1, 4)
        s = LatticeSimplex(random_matrix(rng, d, -5, 5))
        assert canonical_form(s) == canonical_form_bruteforce(s), s.matrix


def test_invariance_under_moves():
    rng = seeded(41)
    for trial in range(100):
        d = rng.randint(1, 5)
        s = LatticeSimplex(random_matrix(rng, d, -4, 4, max_det=60))
        t = move(rng, s)
        assert quotient_group(t) == quotient_group(s)
        assert is_empty(t).empty == is_empty(s).empty
        assert is_hollow(t) == is_hollow(s)
        assert canonical_form(t) == canonical_form(s)
        assert are_equivalent(s, t)


def test_delta8_moves():
    rng = seeded(42)
    s = DELTA8.to_simplex()
    cf = canonical_form(s)
    for _ in range(3):
        t = move(rng, s)
        assert canonical_form(t) == cf
        assert are_equivalent(t, s)


def test_same_volume_not_equivalent():
    a = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2)])
    b = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
    assert a.volume == b.volume == 2
    assert not are_equivalent(a, b)
    assert canonical_form(a) != canonical_form(b)
    assert is_empty(b).empty and not is_empty(a).empty


def test_equivalence_iff_canonical_equal():
    rng = seeded(43)
    pool = []
    for _ in range(30):
        s = LatticeSimplex(random_matrix(rng, 3, -2, 2, max_det=4))
        pool.append(s)
        pool.append(move(rng, s))
    pool += [white(1, 5), white(2, 5), white(3, 5), dilate(2, 3)]
    for i, a in enumerate(pool):
        for b in pool[i:]:
            assert are_equivalent(a, b) == (canonical_form(a) == canonical_form(b))


def test_white_classes():
    # T(p, q) ~ T(p', q) when p' = -p or p p' = 1 mod q (up to the sign convention)
    assert are_equivalent(white(1, 5), white(4, 5))
    assert are_equivalent(white(2, 5), white(3, 5))
    assert not are_equivalent(white(1, 5), white(2, 5))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        are_equivalent(dilate(2, 2), dilate(2, 3))


def test_perm_cap():
    with pytest.raises(PermCapExceeded) as info:
        canonical_form(dilate(2, 5), perm_cap=100)
    assert info.value.cap == "perm_cap"
    with pytest.raises(PermCapExceeded):
        are_equivalent(dilate(2, 5), dilate(2, 5), perm_cap=100)
