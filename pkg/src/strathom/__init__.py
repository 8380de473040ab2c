"""Mod-2 intersection homology of stratified simplicial complexes."""

from .chains import (Chain, SheetPairing, SimplicialMap, boundary, boundary_via_link,
                     image_closure, pushforward, sigma, support_dim_in)
from .duality import (DualityReport, LocalCone, duality_check, ih_isolated_formula,
                      intersection_number, local_engine_dims, local_ih_oracle,
                      mv_consistency)
from .engine import IHResult, homology, ih_closed, ih_compact, ih_relative
from .gf2 import Gf2Matrix, Subspace, nullspace, quotient_dim, rank, solve
from .perversity import (LoosePerversity, PerversityPair, compile_constraints,
                         default_pair, is_allowable, validate_pair)
from .resolution import ResolutionDatum, check_small, strict_transform, verify_smallres
from .scomplex import DualBlockDecomposition, SimplicialComplex, simplex, suspension
from .strat import Filtration, Stratum, check_frontier, common_refinement, refines, strata

__version__ = "0.1.0"

__all__ = [
    "Chain", "SheetPairing", "SimplicialMap", "boundary", "boundary_via_link",
    "image_closure", "pushforward", "sigma", "support_dim_in",
    "DualityReport", "LocalCone", "duality_check", "ih_isolated_formula",
    "intersection_number", "local_engine_dims", "local_ih_oracle", "mv_consistency",
    "IHResult", "homology", "ih_closed", "ih_compact", "ih_relative",
    "Gf2Matrix", "Subspace", "nullspace", "quotient_dim", "rank", "solve",
    "LoosePerversity", "PerversityPair", "compile_constraints", "default_pair",
    "is_allowable", "validate_pair",
    "ResolutionDatum", "check_small", "strict_transform", "verify_smallres",
    "DualBlockDecomposition", "SimplicialComplex", "simplex", "suspension",
    "Filtration", "Stratum", "check_frontier", "common_refinement", "refines", "strata",
]
