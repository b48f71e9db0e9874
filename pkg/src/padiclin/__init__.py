"""Linearization discs and sphere dynamics of p-adic power series."""

from .padic import (
    CharPSeries,
    FieldContext,
    FieldElement,
    PrecisionError,
    ResidueRing,
    arith,
    charp_pow_check,
    from_rational,
)
from .valuation import (
    DiscSpec,
    LogRadius,
    disc_in_subfield,
    factorial_valuation,
    locate_s,
    radius_ladder,
)
from .multiplier import (
    MultiplierProfile,
    RootOfUnityError,
    alpha_distance,
    analyze_multiplier,
    compute_m,
    distance_direct,
    distance_formula,
    is_maximal,
    is_primitive,
    profile_from_valuations,
    transitivity_mod,
)
from .cycles import CycleReport

__version__ = "0.1.0"
