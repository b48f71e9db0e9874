"""Lower bounds for the linearization disc and the maximality test in a field K.

With ``a = p**(-q_a)`` and the multiplier data ``(m, s, nu_1m, nu_alpha)``
the estimate ``sigma = p**(-q_sigma)`` has

    q_sigma = -q_a + 1/(m(p-1)p**s) + (nu_1m/m)(1 + s(p-1)/p)
              + (nu_alpha - nu_1m)/(m p**s).

For ``s = 0`` this is the case I radius, off the ladder (``nu_alpha =
nu_1m``) it is the case II radius and on the ladder the case III radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..multiplier import MultiplierProfile
from ..valuation import DiscSpec, LogRadius, disc_in_subfield, fraction_str, lattice_above

INF = math.inf


def _q(a) -> Fraction:
    """Exponent of ``a`` from a LogRadius, a Growth or a bare rational."""
    q = getattr(a, "q", a)
    if q in (INF, -INF):
        raise ValueError("a must be a positive finite radius (a linear map has no finite a)")
    return Fraction(q)


def case_tag(profile: MultiplierProfile) -> str:
    if profile.s == 0:
        return "I"
    return "III" if profile.on_ladder else "II"


def sigma_q(profile: MultiplierProfile, q_a) -> Fraction:
    p, m, s = profile.p, profile.m, profile.s
    q_a = _q(q_a)
    ps = p ** s
    return (-q_a + Fraction(1, m * (p - 1) * ps)
            + profile.nu_1m / m * (1 + Fraction(s * (p - 1), p))
            + (profile.nu_alpha - profile.nu_1m) / (m * ps))


def sigma_lower_bound(profile: MultiplierProfile, a) -> Fraction:
    """Exponent ``q`` of a simpler radius that never exceeds sigma."""
    p, m, s = profile.p, profile.m, profile.s
    q_a = _q(a)
    ps = p ** s
    return (-q_a + Fraction(1 + s * (p - 1), m * (p - 1) * ps)
            + profile.nu_1m / m
            + (profile.nu_alpha - profile.nu_1m) / (m * ps))


@dataclass
class DiscEstimate:
    case: str
    radius: LogRadius
    closed_included: bool | None  # None: not decided
    subfield: DiscSpec
    maximal_in_subfield: bool
    q_a: Fraction
    q_sigma: Fraction
    q_tau: Fraction | None = None
    caveats: list = field(default_factory=list)

    def to_json(self):
        out = {
            "case": self.case,
            "q_a": fraction_str(self.q_a),
            "q_sigma": fraction_str(self.q_sigma),
            "closed_included": "unknown" if self.closed_included is None else self.closed_included,
            "subfield": self.subfield.to_json(),
            "maximal": self.maximal_in_subfield,
            "caveats": list(self.caveats),
        }
        if self.q_tau is not None:
            out["q_tau"] = fraction_str(self.q_tau)
        return out


def maximal_by_lattice(q_disc, q_a, e: int) -> bool:
    """Whether ``D_r(0) cap K`` contains ``D_{1/a}(0) cap K`` (both discs open).

    Points of K in the open disc of exponent ``q`` are those with
    valuation at least the lattice point strictly above ``q``.
    """
    return lattice_above(q_disc, e) <= lattice_above(-Fraction(q_a), e)


def sigma_estimate(profile: MultiplierProfile, a) -> DiscEstimate:
    """The disc ``D_sigma(0)`` contained in the linearization disc."""
    q_a = _q(a)
    q = sigma_q(profile, q_a)
    p, e = profile.p, profile.e
    r = LogRadius(q, p)
    sub = disc_in_subfield(DiscSpec(r, False), e)
    caveats = ["closed disc of radius sigma is included only if g converges on its boundary"]
    return DiscEstimate(case_tag(profile), r, None, sub, maximal_by_lattice(q, q_a, e), q_a, q,
                        caveats=caveats)


@dataclass(frozen=True)
class MaximalityVerdict:
    """Outcome of the sufficient condition for a maximal disc in K."""

    holds: bool
    s: int
    epsilon: int
    lhs: Fraction
    rhs: Fraction
    direct: bool
    specialized: Fraction | None = None
    caveats: tuple = ()

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {
            "condition_holds": self.holds,
            "s": self.s,
            "epsilon": self.epsilon,
            "rhs": fraction_str(self.rhs),
            "lattice_check": self.direct,
            "specialized_rhs": None if self.specialized is None else fraction_str(self.specialized),
            "caveats": list(self.caveats),
        }


def maximality_extension(profile: MultiplierProfile, a, e: int | None = None) -> MaximalityVerdict:
    """Sufficient condition ``s < (m/eps - 2) p/(p-1) - v((alpha - lambda**m)/(1 - lambda**m))``.

    Here ``s`` satisfies ``R(s) < |1 - lambda**m| <= R(s+1)``, which is one
    less than the ladder index of the profile when ``|1 - lambda**m|`` sits
    exactly on ``R(s+1)``, and ``nu(1 - lambda**m) = eps/e``.
    """
    e = profile.e if e is None else e
    eps = profile.nu_1m * e
    if eps.denominator != 1:
        raise ValueError(f"v(1 - lambda**m) * e = {eps} is not an integer")
    eps = int(eps)
    p, m = profile.p, profile.m
    s = profile.s - 1 if profile.on_ladder else profile.s
    ratio = profile.nu_alpha - profile.nu_1m
    rhs = (Fraction(m, eps) - 2) * Fraction(p, p - 1) - ratio
    holds = s < rhs
    q_a = _q(a)
    direct = maximal_by_lattice(sigma_q(profile, q_a), q_a, e)
    specialized = None
    if profile.maximal:
        specialized = (p ** profile.f - 3) * Fraction(p, p - 1) - ratio
    caveats = []
    if not holds:
        caveats.append("sufficient-only: failure of the condition does not show the disc is smaller")
    return MaximalityVerdict(holds, s, eps, Fraction(s), rhs, direct, specialized, tuple(caveats))
