"""
Quotient groups of lattice simplices
====================================

A simplex conv{0, a_1, ..., a_d} is stored as the matrix with columns a_i.
Its quotient group is Z^d modulo the column lattice, read off from the
Smith form.
"""
from latsimplex import LatticeSimplex, quotient_group
from latsimplex.linalg import snf
from latsimplex.simplex import dilate, white

# two triangles of the same area with different groups
for M in [((4, 0), (0, 3)), ((3, 0), (0, 3))]:
    G = quotient_group(LatticeSimplex(M))
    print(M, "divisors", G.divisors, "rank", G.cyclicity_rank)

# the Smith decomposition itself: A = U diag(m) V
dec = snf(((2, 4), (6, 8)))
print("divisors (largest first):", dec.divisors)

# dilates of the standard simplex have the most non-cyclic group possible
for d in range(1, 5):
    print("2*S_%d" % d, quotient_group(dilate(2, d)).divisors)

# White tetrahedra are always cyclic
print("T(2,5)", quotient_group(white(2, 5)).divisors)
