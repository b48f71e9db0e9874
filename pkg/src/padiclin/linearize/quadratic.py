"""Exact theory for quadratic maps with ``p**-1 < |1 - lambda| < 1``, ``p`` odd.

For ``f(x) = lambda x + a_2 x**2`` (or a series whose quadratic term
dominates) the conjugacy coefficients satisfy

    |b_k| = |a_2|**(k-1) |1 - lambda|**floor((k-1)/p) / prod_{n<k} |1 - lambda**n|

and the linearization disc is exactly the open disc of radius
``tau = |1 - lambda|**(-1/p) sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..multiplier import MultiplierProfile
from ..padic import FieldElement
from ..valuation import DiscSpec, LogRadius, disc_in_subfield, fraction_str
from .conjugacy import sum_nu
from .radius import DiscEstimate, maximal_by_lattice, sigma_q
from .series import PowerSeries, coeff_valuation

INF = math.inf


class NotApplicable(ValueError):
    """The quadratic theory does not cover this multiplier."""


def _nu_1(profile: MultiplierProfile) -> Fraction:
    if profile.p == 2:
        raise NotApplicable("the quadratic theory needs p odd")
    if profile.m != 1:
        raise NotApplicable("need 0 < v(1 - lambda) < 1, but |1 - lambda| = 1")
    nu = profile.nu_1m
    if not 0 < nu < 1:
        raise NotApplicable(f"need 0 < v(1 - lambda) < 1, got {nu}")
    return nu


def _a2_val(a2) -> Fraction:
    v = coeff_valuation(a2) if isinstance(a2, FieldElement) else a2
    if v == INF:
        raise NotApplicable("a_2 = 0")
    return Fraction(v)


def tau_q(profile: MultiplierProfile, a2) -> Fraction:
    nu = _nu_1(profile)
    return sigma_q(profile, _a2_val(a2)) - nu / profile.p


def tau_quadratic(profile: MultiplierProfile, a2) -> DiscEstimate:
    """The exact linearization disc ``D_tau(0)`` (open, boundary excluded)."""
    q_a = _a2_val(a2)
    q_t = tau_q(profile, a2)
    q_s = sigma_q(profile, q_a)
    r = LogRadius(q_t, profile.p)
    sub = disc_in_subfield(DiscSpec(r, False), profile.e)
    return DiscEstimate("quadratic_exact", r, False, sub,
                        maximal_by_lattice(q_t, q_a, profile.e), q_a, q_s, q_t,
                        caveats=["g diverges on the sphere of radius tau"])


def bk_quadratic_exact(k: int, profile: MultiplierProfile, a2) -> Fraction:
    """``v(b_k)`` from the closed form."""
    if k < 1:
        raise ValueError("k >= 1 required")
    nu = _nu_1(profile)
    if k == 1:
        return Fraction(0)
    return (k - 1) * _a2_val(a2) + (k - 1) // profile.p * nu - sum_nu(profile, k - 1)


def quadratic_dominance_check(f: PowerSeries, profile: MultiplierProfile | None = None) -> bool:
    """``|1 - lambda|**(1/p) |a_2| > 1`` and ``> |a_i|`` for every ``i >= 3``."""
    if profile is None:
        from ..multiplier import analyze_multiplier
        profile = analyze_multiplier(f.lam)
    nu = _nu_1(profile)
    c = nu / profile.p + coeff_valuation(f.coeff(2))
    if not c < 0:
        return False
    for ai in f.coeffs[3:]:
        if not c < coeff_valuation(ai):
            return False
    T = f.tail_bound
    if T is not None:
        # |a_i| <= T**(i-1) for i > D; the largest such bound sits at i = D+1
        # when T <= 1, and is unbounded when T > 1
        if T.q < 0:
            return False
        if not c < f.degree * T.q:
            return False
    return True


@dataclass(frozen=True)
class BoundaryVerdict:
    """Whether the second fixed point ``(1 - lambda)/a_2`` lies on ``|x| = tau``."""

    paper_condition: bool
    direct: bool
    nu_xhat: Fraction
    q_tau: Fraction
    s: int

    @property
    def on_boundary(self) -> bool:
        return self.direct

    def to_json(self):
        return {
            "criterion": self.paper_condition,
            "on_boundary": self.direct,
            "nu_xhat": fraction_str(self.nu_xhat),
            "q_tau": fraction_str(self.q_tau),
            "s": self.s,
        }


def t_of_s(s: int, p: int) -> Fraction:
    """The radius exponent singled out for ``s >= 2``."""
    ps1 = p ** (s - 1)
    return Fraction((s - 1) * ps1 * (p - 1) + ps1 - 1, ps1 * (p - 1))


def boundary_fixed_point(profile: MultiplierProfile, a2) -> BoundaryVerdict:
    """Report both the closed-form criterion and the direct comparison.

    The direct test compares ``v(x_hat) = v(1 - lambda) - v(a_2)`` with
    ``q_tau``; it is the decisive answer.
    """
    nu = _nu_1(profile)
    p, s = profile.p, profile.s
    q_t = tau_q(profile, a2)
    nu_x = nu - _a2_val(a2)
    if s == 0:
        crit = False
    elif s == 1:
        crit = profile.nu_alpha == profile.nu_1m and nu == Fraction(1, 2 * (p - 1))
    else:
        crit = nu == t_of_s(s, p)
    return BoundaryVerdict(crit, nu_x == q_t, nu_x, q_t, s)


def boundary_gap(profile: MultiplierProfile) -> Fraction:
    """``q_tau - v(x_hat)``, which does not depend on ``a_2``."""
    nu = _nu_1(profile)
    return tau_q(profile, 0) - nu


