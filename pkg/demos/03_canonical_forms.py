"""
Unimodular equivalence
======================

Two simplices are equivalent when an integral affine map with determinant
+-1 carries one onto the other. The canonical form is the smallest
Hermite basis over all vertex re-rootings and coordinate orders.
"""
import random

from latsimplex import are_equivalent, canonical_form, from_vertices
from latsimplex.linalg import matvec

a = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2)])
b = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
print("same volume:", a.volume == b.volume, "equivalent:", are_equivalent(a, b))

# move b around by a unimodular map and a translation, shuffle the vertices
W = ((1, 2, 0), (0, 1, 0), (3, 7, 1))
verts = [tuple(x + t for x, t in zip(matvec(W, v), (5, -1, 2))) for v in b.vertices()]
random.Random(0).shuffle(verts)
moved = from_vertices(verts)
print(moved.matrix)
print("still equivalent:", are_equivalent(b, moved))
print(canonical_form(moved).matrix == canonical_form(b).matrix)
