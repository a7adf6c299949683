"""Exact tools for simplicial terminal reflexive and smooth Fano lattice polytopes."""

from .catalog import (
    CatalogEntry,
    Recipe,
    catalog,
    catalog_3d,
    catalog_3d_minus_1,
    catalog_3d_minus_2,
    verify_catalog,
)
from .constructions import (
    bipyramid,
    cross_polytope,
    del_pezzo,
    direct_sum,
    polygon,
    pseudo_del_pezzo,
    segment,
)
from .equivalence import are_equivalent, canonical_form, decompose_direct_sum
from .errors import FanoError
from .invariants import eccentricity, eta_vector, special_facets, vertex_sum
from .lemmas import check_structure_lemmas
from .polytope import (
    LatticePolytope,
    facets,
    is_reflexive,
    is_simplicial,
    is_smooth_fano,
    is_str,
    is_terminal,
    polar_dual,
)

__version__ = "0.1.0"
