"""Exact computations with empty lattice simplices and their quotient groups."""
__version__ = "0.1.0"

from .canonical import CanonicalForm, are_equivalent, canonical_form
from .emptiness import EmptinessCertificate, interior_point, is_empty, is_hollow
from .linalg import lattice_basis, row_hnf, snf, solve_exact
from .search import (
    admissible_columns,
    binary_construction,
    census,
    cre_table,
    crp_lower,
    crp_upper,
    lift3,
    subset_admissible,
)
from .simplex import (
    DELTA8,
    DELTA9,
    LatticeSimplex,
    PPowerForm,
    QuotientGroup,
    construct_named,
    facet_simplex,
    from_vertices,
    quotient_group,
    reduce_to_p_power,
    to_p_power_form,
)
