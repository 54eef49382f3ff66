"""Exact topology of generalized Kummer constructions T^n / Z_2^k."""

from .cohomology import ExteriorClass, induced_sign, invariant_basis, monomial, orbifold_betti
from .fixed_loci import (
    AffineSubtorus,
    SingularOrbit,
    check_joyce_conditions,
    fixed_locus,
    simply_connected_sufficient,
    singular_orbits,
)
from .group import AffineInvolutionMap, GroupZ2k, compose, kummer_example, make_group
from .resolution import generator_catalogue, resolved_betti, torus_class
from .ring import (
    associativity_defects,
    massey_candidates,
    pairing_matrix,
    product,
    quotient_pairing,
    ring_table,
    subtorus_intersection_number,
)

__version__ = "0.1.0"
