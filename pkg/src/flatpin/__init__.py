"""Exact pin and spin structure counts on flat manifolds with holonomy Z_2^k."""

from .bieberbach import AffineElement, BieberbachGroup, ReducedWord, torus, validate
from .catalog import CatalogEntry, builtin, family_F, search_pairs
from .clifford import CliffordElement, Convention, mu_apply, u_pre
from .dyadic import RootTwoDyadic
from .errors import *  # noqa: F401,F403
from .groupfile import format_group, parse_group, read_group
from .invariants import (HomologyResult, betti, betti_closed_form_z2, homology_h1,
                         isospectral_diagonal, shortest_geodesic_sq, smith_normal_form,
                         sunada_profile)
from .pinspin import (PinStructure, StructureCount, assemble, count, enumerate_structures,
                      evaluate, homomorphism_check, nonexistence_witness, solve)
from .signperm import SignedPermutation

__version__ = "0.1.0"
