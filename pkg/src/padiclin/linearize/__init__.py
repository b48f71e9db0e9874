"""Conjugacy coefficients, radius estimates and the exact quadratic theory."""

from .conjugacy import (
    BkBound,
    ConjugacySeries,
    bk_bound,
    conjugacy,
    conjugacy_oracle,
    precision_budget,
    sum_nu,
    sum_nu_direct,
)
from .quadratic import (
    BoundaryVerdict,
    NotApplicable,
    bk_quadratic_exact,
    boundary_fixed_point,
    quadratic_dominance_check,
    tau_quadratic,
)
from .radius import (
    DiscEstimate,
    MaximalityVerdict,
    maximality_extension,
    sigma_estimate,
    sigma_lower_bound,
    sigma_q,
)
from .series import (
    Growth,
    PowerSeries,
    WeierstrassData,
    compose,
    growth_a,
    invert_series,
    lie_logarithm,
    max_injectivity_disc,
    mul_trunc,
    weierstrass_data,
)
