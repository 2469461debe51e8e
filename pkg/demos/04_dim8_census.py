"""
Empty 3-power simplices in dimension 8
======================================

Every empty 3-power 8-simplex of rank 5 has a block form whose B part is
five columns of a 17-column pool. Checking all 6188 choices and sorting
the survivors into classes leaves a single simplex.
"""
import time

from latsimplex import DELTA8, admissible_columns, canonical_form, census

pool = admissible_columns(3, 3)
print(len(pool.columns), "admissible columns")

t = time.perf_counter()
rep = census(3, 8, 5, dedupe=True, workers=1)
print(rep.candidates_enumerated, "candidates,", len(rep.empty_found), "empty,",
      len(rep.equivalence_classes), "class(es) in %.1fs" % (time.perf_counter() - t))

same = rep.equivalence_classes[0]["canonical"] == [list(r) for r in canonical_form(DELTA8.to_simplex()).matrix]
print("the class is delta8:", same)

# pruning by the necessary conditions skips most candidates and loses nothing
pruned = census(3, 8, 5, prune=True, workers=1)
print("pruned away", pruned.prune_killed, "same survivors:", pruned.empty_found == rep.empty_found)

# one dimension up, rank 6 is impossible
print("rank 6 in dim 9:", len(census(3, 9, 6, workers=1).empty_found), "empty")
