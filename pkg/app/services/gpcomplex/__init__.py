"""General-position complexes, the S̃ models and the ∗ product."""
from app.services.gpcomplex.chains import (
    Chain,
    GPSpace,
    boundary,
    chain_product,
    contract,
    find_general_vector,
    generator_cycle,
    homotopy,
    include,
)
from app.services.gpcomplex.decomposability import decomposability_suite
from app.services.gpcomplex.product import d_splitting, ksb, ksp, ksp_prime, star_product
from app.services.gpcomplex.stilde import (
    compare_models,
    cycle_to_symbols,
    orbit_normalize,
    stilde_direct,
    stilde_presented,
)
from app.services.gpcomplex.symbols import SymbolKind, SymbolSum, d_map, phi_map, pi_map, t_map

__all__ = [
    "Chain",
    "GPSpace",
    "SymbolKind",
    "SymbolSum",
    "boundary",
    "chain_product",
    "compare_models",
    "contract",
    "cycle_to_symbols",
    "d_map",
    "d_splitting",
    "decomposability_suite",
    "find_general_vector",
    "generator_cycle",
    "homotopy",
    "include",
    "ksb",
    "ksp",
    "ksp_prime",
    "orbit_normalize",
    "phi_map",
    "pi_map",
    "star_product",
    "stilde_direct",
    "stilde_presented",
    "t_map",
]
