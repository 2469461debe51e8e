"""
Bounds, the table, and lifting
==============================

Lower bounds come from searches, upper bounds from counting admissible
columns. Lifting an empty 3-power simplex roughly doubles the dimension
and beats every 2-power simplex.
"""
from latsimplex import DELTA8, binary_construction, cre_table, crp_upper, is_empty, lift3

for d in (4, 8, 12):
    s = crp_upper(2, d)
    print("p=2 d=%d log %d pool %d combined %d" % (d, s.log_bound, s.pool_bound, s.combined))

form = binary_construction(2, 4, 8)
print("binary 12-simplex rank", form.r, is_empty(form.to_simplex()).verdict)

for row in cre_table(9):
    print(row.d, row.lower_by_prime, "cr_e in", row.bracket)

big = lift3(DELTA8)
cert = is_empty(big.to_simplex())
print("lift: dim", big.dim, "rank", big.r, cert.verdict, cert.cosets_checked, "cosets")
print("lift again: dim", lift3(big).dim, "rank", lift3(big).r)
