"""
Testing emptiness
=================

Lattice points of a simplex correspond to cosets of A^-1 Z^d / Z^d whose
barycentric coordinates sum to at most one. Scanning the cosets decides
emptiness exactly.
"""
from latsimplex import from_vertices, is_empty, is_hollow, interior_point
from latsimplex.simplex import PPowerForm, dilate, reeve

base = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]

# the last vertex decides everything here
for top in [(2, 2, 2, 3), (2, 2, 2, 5)]:
    cert = is_empty(from_vertices(base + [top]))
    print(top, cert.verdict, "witness", cert.witness, "cosets", cert.cosets_checked)

# Reeve tetrahedra are empty for every height
print([is_empty(reeve(h)).empty for h in range(2, 10)])

# hollow but not empty
s = dilate(2, 3)
print("2*S_3 hollow:", is_hollow(s), "empty:", is_empty(s).empty)
print("3*S_2 interior point:", interior_point(dilate(3, 2)))

# p-power simplices have a cheaper criterion working on B alone
form = PPowerForm(3, 1, ((2,), (2,), (2,)))
print(is_empty(form.to_simplex(), method="fast").verdict,
      is_empty(form.to_simplex(), method="general").verdict)
