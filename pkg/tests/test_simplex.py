import json
from math import gcd

import pytest

from latsimplex import linalg
from latsimplex.canonical import canonical_form
from latsimplex.emptiness import is_empty
from latsimplex.errors import DegenerateSimplex, InvalidParams, InvalidPrime, LatticeError, NotPPower
from latsimplex.simplex import (
    DELTA8,
    DELTA9,
    LatticeSimplex,
    PPowerForm,
    construct_named,
    dilate,
    facet_simplex,
    from_vertices,
    quotient_group,
    reduce_to_p_power,
    reeve,
    to_p_power_form,
    white,
)

from oracles import determinantal_divisors, mul, random_matrix, random_unimodular, seeded


def example_matrix(p):
    return ((1, 0, 1, 0), (0, 1, 1, 0), (0, 0, p, 1), (0, 0, 0, p))


def test_from_vertices_standard():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert from_vertices(pts).matrix == linalg.identity(3)


def test_from_vertices_white_and_reroot():
    p, q = 2, 5
    T = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, p, q)])
    assert T.matrix == ((1, 0, 1), (0, 1, p), (0, 0, q))
    assert T == white(p, q)
    moved = from_vertices([(1, p, q), (0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert quotient_group(moved) == quotient_group(T)
    assert canonical_form(moved) == canonical_form(T)


def test_from_vertices_degenerate():
    with pytest.raises(DegenerateSimplex):
        from_vertices([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateSimplex):
        from_vertices([(0, 0), (1, 0)])


def test_quotient_group_of_dilates():
    for d in range(1, 7):
        G = quotient_group(dilate(2, d))
        assert G.divisors == (2,) * d
        assert G.cyclicity_rank == d
        assert G.order == 2**d


def test_fig1_triangles():
    G = quotient_group(LatticeSimplex(((4, 0), (0, 3))))
    assert G.divisors == (12,) and G.cyclicity_rank == 1
    G = quotient_group(LatticeSimplex(((3, 0), (0, 3))))
    assert G.divisors == (3, 3) and G.cyclicity_rank == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_example_matrix_is_cyclic(p):
    G = quotient_group(LatticeSimplex(example_matrix(p)))
    assert G.divisors == (p * p,)


def test_white_simplices_cyclic():
    for q in range(2, 13):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            T = white(p, q)
            oracle = [m for m in determinantal_divisors(T.matrix) if m > 1]
            assert quotient_group(T).divisors == tuple(oracle) == (q,)


def test_quotient_order_and_transpose():
    rng = seeded(21)
    for _ in range(200):
        d = rng.randint(1, 5)
        A = random_matrix(rng, d)
        s = LatticeSimplex(A)
        G = quotient_group(s)
        assert G.order == abs(linalg.det(A)) == s.volume
        assert G.divisors == quotient_group(LatticeSimplex(linalg.transpose(A))).divisors
        assert list(G.divisors) == sorted(G.divisors)
        assert all(b % a == 0 for a, b in zip(G.divisors, G.divisors[1:]))


def test_construct_named():
    d8 = construct_named("delta8")
    assert d8.matrix == DELTA8.matrix()
    assert DELTA8.B == ((1, 0, 1, 1, 2), (0, 1, 1, 2, 1), (1, 1, 2, 2, 2))
    assert quotient_group(d8).divisors == (3,) * 5
    d9 = construct_named("delta9")
    assert d9.p_power.B[0] == (0,) * 5 and d9.p_power.B[1:] == DELTA8.B
    assert quotient_group(d9).cyclicity_rank == 5
    w = construct_named("white", 1, 2)
    assert w.matrix == ((1, 0, 1), (0, 1, 1), (0, 0, 2))
    assert quotient_group(w).divisors == (2,)
    assert construct_named("reeve", 4) == reeve(4)
    assert construct_named("dilate", 3, 2).matrix == ((3, 0), (0, 3))


@pytest.mark.parametrize("kind, params", [("white", (2, 4)), ("white", (3, 3)), ("reeve", (0,)),
                                          ("dilate", (0, 2)), ("nosuch", ()), ("delta8", (1,))])
def test_construct_named_rejects(kind, params):
    with pytest.raises(InvalidParams):
        construct_named(kind, *params)


def test_p_power_form_validation():
    with pytest.raises(InvalidPrime):
        PPowerForm(4, 1, ((1,), (1,)))
    with pytest.raises(InvalidParams):
        PPowerForm(3, 1, ((3,), (1,)))
    with pytest.raises(InvalidParams):
        PPowerForm(3, 2, ((1,), (1,)))


def test_to_p_power_form_fixed_point():
    s = LatticeSimplex(DELTA8.matrix())
    assert s.p_power is None
    assert to_p_power_form(s) == DELTA8


def test_to_p_power_form_dilate():
    form = to_p_power_form(dilate(5, 3))
    assert form.p == 5 and form.r == 3 and form.k == 0


def test_to_p_power_form_rejects_non_elementary():
    with pytest.raises(NotPPower):
        to_p_power_form(LatticeSimplex(example_matrix(2)))
    with pytest.raises(NotPPower):
        to_p_power_form(LatticeSimplex(((4, 0), (0, 3))))


def _random_form(rng, p, k, r):
    return PPowerForm(p, r, tuple(tuple(rng.randrange(p) for _ in range(r)) for _ in range(k)))


def _scramble(rng, simplex):
    """Random unimodular image, re-rooted at a random vertex with shuffled vertex order."""
    d = simplex.dim
    W = random_unimodular(rng, d)
    verts = [linalg.matvec(W, v) for v in simplex.vertices()]
    t = tuple(rng.randint(-5, 5) for _ in range(d))
    verts = [tuple(a + b for a, b in zip(v, t)) for v in verts]
    rng.shuffle(verts)
    return from_vertices(verts)


def test_to_p_power_form_after_random_moves():
    rng = seeded(4)
    cf8 = canonical_form(DELTA8.to_simplex())
    for _ in range(5):
        form = to_p_power_form(_scramble(rng, DELTA8.to_simplex()))
        assert (form.p, form.r, form.k) == (3, 5, 3)
        assert canonical_form(form.to_simplex()) == cf8
    for _ in range(60):
        p = rng.choice([2, 3, 5, 7])
        k, r = rng.randint(0, 3), rng.randint(1, 3)
        orig = _random_form(rng, p, k, r)
        moved = _scramble(rng, orig.to_simplex())
        form = to_p_power_form(moved)
        assert (form.p, form.r, form.k) == (p, r, k)
        H = form.matrix()
        assert [H[i][i] for i in range(form.dim)] == [1] * k + [p] * r
        assert canonical_form(form.to_simplex()) == canonical_form(moved)
        # residues of the last r unit vectors generate the quotient
        for i in range(k):
            e = tuple(int(i == j) for j in range(form.dim))
            assert linalg.solve_exact(H, e).is_integral()


def test_reduce_to_p_power_single_divisor():
    s = LatticeSimplex(((4, 0), (0, 3)))
    assert quotient_group(reduce_to_p_power(s, 3)).divisors == (3,)
    assert quotient_group(reduce_to_p_power(s, 2)).divisors == (2,)
    with pytest.raises(InvalidPrime):
        reduce_to_p_power(s, 5)
    with pytest.raises(InvalidPrime):
        reduce_to_p_power(s, 4)


def _row_lattice_contains(outer, inner):
    """Every row of ``inner`` lies in the row lattice of ``outer``."""
    At = linalg.transpose(outer.matrix)
    return all(linalg.solve_exact(At, row).is_integral() for row in inner.matrix)


def test_reduce_to_p_power_example_matrix():
    s = LatticeSimplex(example_matrix(2))
    r = reduce_to_p_power(s, 2)
    assert quotient_group(r).divisors == (2,)
    assert _row_lattice_contains(r, s)


def test_reduce_to_p_power_random():
    rng = seeded(9)
    for _ in range(150):
        d = rng.randint(1, 5)
        s = LatticeSimplex(random_matrix(rng, d, -6, 6))
        G = quotient_group(s)
        if not G.divisors:
            continue
        m_r = G.divisors[0]
        for p in (2, 3, 5, 7):
            if m_r % p:
                continue
            r = reduce_to_p_power(s, p)
            assert quotient_group(r).divisors == (p,) * G.cyclicity_rank
            assert _row_lattice_contains(r, s)


def test_facet_simplex_delta8():
    f = facet_simplex(DELTA8, 8)
    assert f.dim == 7
    assert quotient_group(f).divisors == (3,) * 4
    assert f.p_power.B == tuple(row[:4] for row in DELTA8.B)


def test_facet_simplex_rank_one():
    form = PPowerForm(5, 1, ((1,), (2,)))
    f = facet_simplex(form, 3)
    assert quotient_group(f).cyclicity_rank == 0


def test_facet_simplex_index_range():
    with pytest.raises(IndexError):
        facet_simplex(DELTA8, 3)
    with pytest.raises(IndexError):
        facet_simplex(DELTA8, 9)


def test_json_round_trip():
    for s in (DELTA8.to_simplex(), white(2, 7), LatticeSimplex(((2, 1), (-1, 3)))):
        obj = json.loads(json.dumps(s.to_json()))
        back = LatticeSimplex.from_json(obj)
        assert back == s
        assert back.p_power == s.p_power
        assert json.loads(json.dumps(back.to_json())) == obj


def test_json_rejects_mismatch():
    obj = DELTA8.to_simplex().to_json()
    obj["p_power"]["B"][0][0] = 2
    with pytest.raises(LatticeError):
        LatticeSimplex.from_json(obj)
    with pytest.raises(LatticeError):
        LatticeSimplex.from_json({"dim": 2, "columns": [[1, 0]]})


def test_delta9_empty():
    assert is_empty(DELTA9.to_simplex()).empty
    assert is_empty(DELTA9.to_simplex(), method="general").empty


def test_lattice_bases_exposed():
    s = LatticeSimplex(((1, 1), (0, 2)))
    assert s.column_lattice_basis() == linalg.lattice_basis(s.matrix)
    assert s.row_lattice_basis() == linalg.lattice_basis(linalg.transpose(s.matrix))
    W = random_unimodular(seeded(1), 2)
    assert LatticeSimplex(mul(s.matrix, W)).column_lattice_basis() == s.column_lattice_basis()
    assert LatticeSimplex(mul(W, s.matrix)).row_lattice_basis() == s.row_lattice_basis()
