"""Classification of an indifferent multiplier lambda.

For ``|lambda| = 1`` the integer ``m`` is the least ``n`` with
``|1 - lambda**n| < 1``; it divides ``p**f - 1``.  The position of
``|1 - lambda**m|`` on the ladder ``R(t)`` gives ``s``, and on the ladder the
distance to the nearest root of unity ``alpha`` is recovered from the
valuation of ``1 - lambda**(m p**s)`` without ever constructing ``alpha``.
These data determine ``|1 - lambda**n|`` for every ``n`` in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cycles import CycleReport, check_size, report
from .padic import FieldContext, FieldElement, PrecisionError, ResidueRing, vp
from .valuation import LogRadius, fraction_str, ladder_q, locate_s

INF = math.inf


class RootOfUnityError(ValueError):
    """lambda is a root of unity to working precision."""


@dataclass(frozen=True)
class MultiplierProfile:
    p: int
    e: int
    f: int
    m: int
    s: int
    nu_1m: Fraction
    nu_alpha: Fraction
    on_ladder: bool
    primitive: bool
    maximal: bool
    lam: FieldElement | None = None
    horizon: int | None = None

    @property
    def ctx(self) -> FieldContext | None:
        return None if self.lam is None else self.lam.ctx

    def nu(self, n: int) -> Fraction:
        """Shorthand for ``distance_formula(self, n)``."""
        return distance_formula(self, n)

    def to_json(self):
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "m": self.m,
            "s": self.s,
            "nu_1m": fraction_str(self.nu_1m),
            "nu_alpha": fraction_str(self.nu_alpha),
            "on_ladder": self.on_ladder,
            "primitive": self.primitive,
            "maximal": self.maximal,
            "certification_horizon": self.horizon,
        }


def _unit_check(lam: FieldElement):
    try:
        v = lam.valuation()
    except PrecisionError:
        raise ValueError("lambda is indistinguishable from zero") from None
    if v != 0:
        raise ValueError(f"|lambda| must be 1, got valuation {v}")


def _nu_one_minus(x: FieldElement):
    d = 1 - x
    if d.is_zero() or d.is_indistinguishable():
        return None
    return d.valuation()


def compute_m(lam: FieldElement) -> int:
    """Least ``n >= 1`` with ``|1 - lambda**n| < 1``."""
    _unit_check(lam)
    q = lam.ctx.residue_size
    x = lam
    for n in range(1, q):
        nu = _nu_one_minus(x)
        if nu is None or nu > 0:
            return n
        x = x * lam
    raise ArithmeticError("no n <= p**f - 1 with |1 - lambda**n| < 1")


def alpha_distance(lam: FieldElement, m: int, s: int) -> Fraction:
    """``v(alpha - lambda**m)`` on the ladder sphere ``|1 - lambda**m| = R(s)``."""
    p = lam.ctx.p
    if s < 1:
        raise ValueError("alpha_distance needs an on-ladder position (s >= 1)")
    lm = lam ** m
    nu_1m = _nu_one_minus(lm)
    if nu_1m is None:
        raise RootOfUnityError("lambda**m is 1 to working precision")
    if nu_1m != ladder_q(s, p):
        raise ValueError("lambda**m is not on the ladder sphere R(s); alpha = 1 there")
    big = _nu_one_minus(lm ** (p ** s))
    if big is None:
        raise PrecisionError("1 - lambda**(m p**s) vanishes to working precision")
    return big - (p ** s - 1) * nu_1m


def _validate(p, e, f, m, nu_1m, nu_alpha):
    if m < 1 or m % p == 0:
        raise ValueError("m must be a positive integer prime to p")
    if (p ** f - 1) % m:
        raise ValueError("m must divide p**f - 1")
    if nu_1m <= 0:
        raise ValueError("v(1 - lambda**m) must be positive")
    if (nu_1m * e).denominator != 1:
        raise ValueError(f"v(1 - lambda**m) = {nu_1m} is not in the value group (1/{e})Z")
    if nu_alpha < nu_1m:
        raise ValueError("v(alpha - lambda**m) must be >= v(1 - lambda**m)")


def profile_from_valuations(p, m, nu_1m, nu_alpha=None, *, e=1, f=1) -> MultiplierProfile:
    """Build a profile from valuation data alone, for any ramification data.

    Off the ladder ``nu_alpha`` must equal ``nu_1m`` (or be omitted).
    """
    nu_1m = Fraction(nu_1m)
    nu_alpha = nu_1m if nu_alpha is None else Fraction(nu_alpha)
    _validate(p, e, f, m, nu_1m, nu_alpha)
    pos = locate_s(LogRadius(nu_1m, p), p)
    if not pos.on_ladder and nu_alpha != nu_1m:
        raise ValueError("off the ladder the nearest root of unity is 1, so nu_alpha = nu_1m")
    primitive = m == p ** f - 1
    maximal = primitive and nu_1m == Fraction(1, e)
    return MultiplierProfile(p, e, f, m, pos.s, nu_1m, nu_alpha, pos.on_ladder, primitive, maximal)


def analyze_multiplier(lam: FieldElement) -> MultiplierProfile:
    ctx = lam.ctx
    p = ctx.p
    m = compute_m(lam)
    nu_1m = _nu_one_minus(lam ** m)
    if nu_1m is None:
        raise RootOfUnityError(f"lambda**{m} = 1 to working precision; lambda may be a root of unity")
    pos = locate_s(LogRadius(nu_1m, p), p)
    nu_alpha = alpha_distance(lam, m, pos.s) if pos.on_ladder else nu_1m
    prof = profile_from_valuations(p, m, nu_1m, nu_alpha, e=ctx.e, f=ctx.f_deg)
    horizon = certification_horizon(prof, lam.precision)
    return MultiplierProfile(p, prof.e, prof.f, m, pos.s, nu_1m, nu_alpha, pos.on_ladder,
                             prof.primitive, prof.maximal, lam, horizon)


def certification_horizon(profile: MultiplierProfile, precision) -> int:
    """Largest ``n`` up to which ``lambda**n != 1`` is certified by the digits held.

    ``|1 - lambda**n|`` is smallest at ``n = m p**t``, growing with ``t``; the
    horizon stops just before the first such ``n`` whose predicted valuation
    reaches the working precision.
    """
    if precision == INF:
        return None
    t = 0
    while distance_formula(profile, profile.m * profile.p ** t) < precision:
        t += 1
    return profile.m * profile.p ** t - 1


def distance_formula(profile: MultiplierProfile, n: int) -> Fraction:
    """``v(1 - lambda**n)`` from the profile alone."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m, s, p = profile.m, profile.s, profile.p
    if n % m:
        return Fraction(0)
    k = vp(n, p)
    if s <= k:
        if profile.on_ladder:
            return k - s + (p ** s - 1) * profile.nu_1m + profile.nu_alpha
        return k - s + p ** s * profile.nu_1m
    return p ** k * profile.nu_1m


def distance_direct(lam: FieldElement, n: int) -> Fraction:
    """``v(1 - lambda**n)`` by exponentiation in the field."""
    d = 1 - lam ** n
    if d.is_zero() or d.is_indistinguishable():
        raise PrecisionError(f"1 - lambda**{n} vanishes to working precision", step=n)
    return d.valuation()


def distance_direct_range(lam: FieldElement, n_max: int) -> list[Fraction]:
    """``[v(1 - lambda**n) for n = 1..n_max]`` using one multiplication per step."""
    out = []
    x = lam
    for n in range(1, n_max + 1):
        d = 1 - x
        if d.is_zero() or d.is_indistinguishable():
            raise PrecisionError(f"1 - lambda**{n} vanishes to working precision", step=n)
        out.append(d.valuation())
        x = x * lam
    return out


def is_primitive(profile: MultiplierProfile) -> bool:
    return profile.m == profile.p ** profile.f - 1


def is_maximal(profile: MultiplierProfile) -> bool:
    return is_primitive(profile) and profile.nu_1m == Fraction(1, profile.e)


def _mul_images(ring: ResidueRing, lam_res, codes):
    return [ring.encode(*ring.mul(ring.decode(c), lam_res)) for c in codes]


def transitivity_mod(lam: FieldElement, k: int) -> CycleReport:
    """Cycles of ``x -> lambda x`` on the unit group of ``O / pi**k``."""
    _unit_check(lam)
    ring = ResidueRing(lam.ctx, k)
    check_size(ring.size)
    lam_res = lam.residue_components(k)
    units = ring.sphere(0)
    image = dict(zip(units, _mul_images(ring, lam_res, units)))
    return report(k, 0, units, image)
