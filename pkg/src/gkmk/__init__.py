"""Exact equivariant K-theory of GKM graphs.

Local indices, the canonical basis ``tau_p`` and its path formula, and an
independent localization oracle on weighted projective spaces.
"""

from .canon import CanonicalBasis, basis, decompose, tau, tau_via_paths
from .charring import CharacterElement, CohPolynomial, FractionElement, parse_element, render
from .cutspace import build_cut_space, cut_index, index_general, orbifold_index
from .gkm import (
    GkmGraph,
    KClass,
    Polarization,
    check_class,
    gen_cpn,
    gen_grassmannian,
    load_graph,
    orient,
    validate_graph,
)
from .kernels import BACKEND
from .lagrange import interp_rg, pf_frame
from .lattice import IntMatrix, QuotientLattice, hnf, snf
from .localindex import local_index, total_index

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CanonicalBasis",
    "CharacterElement",
    "CohPolynomial",
    "FractionElement",
    "GkmGraph",
    "IntMatrix",
    "KClass",
    "Polarization",
    "QuotientLattice",
    "basis",
    "build_cut_space",
    "check_class",
    "cut_index",
    "decompose",
    "gen_cpn",
    "gen_grassmannian",
    "hnf",
    "index_general",
    "interp_rg",
    "load_graph",
    "local_index",
    "orbifold_index",
    "orient",
    "parse_element",
    "pf_frame",
    "render",
    "snf",
    "tau",
    "tau_via_paths",
    "total_index",
    "validate_graph",
]
