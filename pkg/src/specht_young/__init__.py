"""Specht's-ratio refinements of the Young inequality for scalars and SPD matrices."""

from .conjecture import SearchConfig, SearchResult, certify, gap, local_descent, random_search
from .errors import ConditionError, DomainError, InputError, NumericError, SpechtYoungError
from .operator import (
    ChainReport,
    compare_refinements,
    verify_add_chain,
    verify_classic_chain,
    verify_mult_chain,
)
from .scalar import (
    WeightedPair,
    add_refined_lower_bound,
    evaluate_scalar_chain,
    mult_refined_lower_bound,
    refined_harmonic_bound,
    reverse_young_upper_bound,
    scan_lemma,
    specht_ratio,
    weighted_jensen_gap,
)
from .spd import (
    SpdMatrix,
    SpectralBounds,
    loewner_geq,
    matrix_power,
    power_mean,
    random_spd_with_spectrum,
    spectral_bounds_from,
    sym_eigen,
    weighted_arith,
    weighted_harm,
)

__version__ = "0.1.0"

__all__ = [
    "ChainReport",
    "ConditionError",
    "DomainError",
    "InputError",
    "NumericError",
    "SearchConfig",
    "SearchResult",
    "SpdMatrix",
    "SpechtYoungError",
    "SpectralBounds",
    "WeightedPair",
    "add_refined_lower_bound",
    "certify",
    "compare_refinements",
    "evaluate_scalar_chain",
    "gap",
    "local_descent",
    "loewner_geq",
    "matrix_power",
    "mult_refined_lower_bound",
    "power_mean",
    "random_search",
    "random_spd_with_spectrum",
    "refined_harmonic_bound",
    "reverse_young_upper_bound",
    "scan_lemma",
    "specht_ratio",
    "spectral_bounds_from",
    "sym_eigen",
    "verify_add_chain",
    "verify_classic_chain",
    "verify_mult_chain",
    "weighted_arith",
    "weighted_harm",
    "weighted_jensen_gap",
]
