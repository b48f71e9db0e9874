"""Dynamics on finite quotients and sampled checks of the conjugacy.

A series with integral coefficients induces a self-map of ``O / pi**k``.
Restricted to the classes of a sphere ``|x| = p**(-j/e)`` inside the
injectivity disc it is a permutation, and its cycle structure at growing
levels ``k`` is the finite shadow of minimality on that sphere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import CycleReport, check_size, max_elems, parallel_images, report
from .linearize.conjugacy import ConjugacySeries
from .linearize.radius import sigma_q
from .linearize.series import PowerSeries, coeff_valuation, growth_a
from .multiplier import MultiplierProfile, analyze_multiplier, transitivity_mod
from .padic import CharPSeries, FieldContext, FieldElement, ResidueRing, charp_pow_check
from .valuation import lattice_above

INF = math.inf
DEFAULT_K_MAX = 6


# -- reduction -------------------------------------------------------------------

class ReducedMap:
    """``x -> f(x)`` on ``O / pi**k`` with classes coded as in `ResidueRing`.

    Instances are picklable so image batches can be computed in worker
    processes.
    """

    def __init__(self, ring: ResidueRing, coeffs):
        self.ring = ring
        self.coeffs = coeffs  # residue pairs, lowest degree first

    def image(self, code: int) -> int:
        ring = self.ring
        x = ring.decode(code)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = ring.mul(acc, x)
            acc = ((acc[0] + c[0]) % ring.modA, (acc[1] + c[1]) % ring.modB)
        return ring.encode(*acc)

    def __call__(self, codes):
        return [self.image(c) for c in codes]

    def table(self, codes=None, workers: int = 1) -> dict:
        codes = range(self.ring.size) if codes is None else codes
        return parallel_images(self, codes, workers)


def reduce_map(f: PowerSeries, k: int) -> ReducedMap:
    """The map induced by ``f`` on ``O / pi**k``."""
    ctx = f.ctx
    for i, c in enumerate(f.coeffs):
        v = coeff_valuation(c)
        if v < 0:
            raise ValueError(f"coefficient a_{i} has negative valuation; reduction is undefined")
    T = f.tail_bound
    if T is not None and f.degree * T.q < Fraction(k, ctx.e):
        raise ValueError("the tail bound does not make the tail vanish modulo pi**k")
    ring = ResidueRing(ctx, k)
    coeffs = [c.residue_components(k) for c in f.coeffs]
    return ReducedMap(ring, coeffs)


def sphere_cycles(f: PowerSeries, j: int, k: int, workers: int = 1) -> CycleReport:
    """Cycle decomposition of reduced ``f`` on the classes of valuation ``j`` (pi units)."""
    if not 0 <= j < k:
        raise ValueError("need 0 <= j < k")
    rmap = reduce_map(f, k)
    check_size(rmap.ring.size)
    domain = rmap.ring.sphere(j)
    image = rmap.table(domain, workers)
    return report(k, j, domain, image)


# -- minimality ------------------------------------------------------------------

@dataclass
class MinimalityVerdict:
    minimal: bool
    uniquely_ergodic: bool
    reason: str
    evidence: list = field(default_factory=list)
    witness: CycleReport | None = None
    empirical_consistent: bool | None = None
    labels: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "minimal": self.minimal,
            "uniquely_ergodic": self.uniquely_ergodic,
            "reason": self.reason,
            "evidence": [r.to_json() for r in self.evidence],
            "witness": None if self.witness is None else self.witness.to_json(),
            "empirical_consistent": self.empirical_consistent,
            "labels": dict(self.labels),
            "notes": list(self.notes),
        }


def _labels(minimal):
    return {
        "invariant_measure": "normalized Haar measure on the sphere" if minimal else None,
        "ergodic_for_positive_invariant_measures": minimal,
        "r_equals_one_over_a": "unknown",
    }


def first_sphere(q_a, e: int) -> int:
    """Smallest ``j >= 0`` with ``p**(-j/e) < 1/a``."""
    if q_a == INF:
        return 0
    return max(0, int(lattice_above(-Fraction(q_a), e) * e))


def minimality_verdict(f: PowerSeries, profile: MultiplierProfile | None = None,
                       k_max: int = DEFAULT_K_MAX, workers: int = 1) -> MinimalityVerdict:
    """Theorem-backed verdict plus exhaustive cycle evidence up to ``k_max``."""
    ctx = f.ctx
    lam = f.lam
    if profile is None:
        profile = analyze_multiplier(lam)
    if ctx.d is not None:
        level = 2 if ctx.f_deg == 2 else 3
        w = transitivity_mod(lam, level)
        return MinimalityVerdict(False, False, "proper extension: multiplication by lambda is "
                                 "never transitive on a sphere", witness=w, labels=_labels(False))
    p = ctx.p
    notes = []
    q = ctx.residue_size
    cap = max_elems()
    while k_max > 1 and q ** k_max > cap:
        k_max -= 1
        notes.append(f"k_max lowered to {k_max} by PADIC_MAX_ELEMS")
    if p == 2:
        minimal = False
        reason = "p = 2: the unit group modulo 8 is not cyclic"
        witness = transitivity_mod(lam, 3)
    elif profile.maximal:
        minimal = True
        reason = "lambda is maximal and p is odd"
        witness = None
    else:
        minimal = False
        reason = "lambda is not maximal" + ("" if profile.primitive else " (not even primitive)")
        witness = transitivity_mod(lam, 2)
    evidence = []
    consistent = None
    q_a = growth_a(f).q
    try:
        reduce_map(f, 1)
        integral = True
    except ValueError:
        integral = False
        notes.append("coefficients are not integral; no finite-quotient evidence")
    if integral:
        j0 = first_sphere(q_a, ctx.e)
        for k in range(j0 + 1, k_max + 1):
            for j in range(j0, k):
                evidence.append(sphere_cycles(f, j, k, workers))
        if evidence:
            consistent = all(r.single_cycle == minimal for r in evidence) if minimal else \
                not all(r.single_cycle for r in evidence)
    return MinimalityVerdict(minimal, minimal, reason, evidence, witness, consistent,
                             _labels(minimal), notes)


def charp_minimality_verdict(p: int, residue_degree: int = 1) -> MinimalityVerdict:
    """Locally compact fields of characteristic p: never transitive on a sphere.

    The witness is ``x**(p**2) = 1 mod t**(p**2)`` for ``x = 1 + t``, so
    no unit has order reaching the ``(c-1) c**(p**2 - 1)`` units mod ``t**(p**2)``.
    """
    ok = charp_pow_check(CharPSeries(p, [1, 1]), 2)
    reason = ("characteristic p: every 1-unit has order dividing p**2 modulo t**(p**2)"
              if ok else "unexpected: the power identity failed")
    v = MinimalityVerdict(False, False, reason, labels=_labels(False))
    v.notes.append(f"residue field size {p ** residue_degree}")
    return v


# -- sampled verification ----------------------------------------------------------

def sample_disc(ctx: FieldContext, min_val_pi: int, count: int, precision: int,
                seed: int = 0, exact_val: bool = False):
    """Random elements with valuation ``>= min_val_pi / e`` (fixed seed).

    With ``exact_val`` every sample has valuation exactly ``min_val_pi / e``.
    """
    rng = random.Random(seed)
    p = ctx.p
    out = []
    while len(out) < count:
        j = min_val_pi if exact_val else min_val_pi + rng.randrange(0, 3)
        x = _random_unit(ctx, rng, precision)
        x = x * _pi_power(ctx, j, precision)
        out.append(x)
    return out


def _random_unit(ctx, rng, precision):
    p = ctx.p
    mod = p ** precision
    while True:
        a = rng.randrange(mod)
        b = rng.randrange(mod) if ctx.d is not None else 0
        if ctx.e == 2 and a % p == 0:
            continue
        if ctx.f_deg == 2 and a % p == 0 and b % p == 0:
            continue
        if ctx.d is None and a % p == 0:
            continue
        return ctx.element(a, b, precision)


def _pi_power(ctx, j, precision):
    if ctx.e == 2:
        pi = ctx.sqrt_d(precision + j)
        return pi ** j if j else ctx.one(precision + j)
    return ctx.one(precision).shift(j)


def conjugacy_residual(f: PowerSeries, g: ConjugacySeries, samples, disc_q=None, n_iter: int = 1):
    """Minimum over samples of ``v(g(f^n(x)) - lambda**n g(x))`` for ``n = 1..n_iter``."""
    lam = f.lam
    worst = INF
    for x in samples:
        if disc_q is not None and not x.is_zero() and not x.valuation() > disc_q:
            raise ValueError("sample outside the certified disc")
        gx = g.evaluate(x)
        y = x
        lam_n = lam
        for _ in range(n_iter):
            y = f.evaluate(y)
            r = g.evaluate(y) - lam_n * gx
            if not r.is_zero():
                worst = min(worst, r.valuation_bound())
            lam_n = lam_n * lam
    return worst


def isometry_check(f: PowerSeries, pairs) -> bool:
    """``|f(x) - f(y)| = |x - y|`` on every sampled pair."""
    for x, y in pairs:
        d = x - y
        if d.is_zero() or d.is_indistinguishable():
            continue
        if (f.evaluate(x) - f.evaluate(y)).valuation_bound() != d.valuation():
            return False
    return True


def norm_preserved(g: ConjugacySeries, samples) -> bool:
    """``v(g(x)) = v(x)`` on every sample."""
    return all(g.evaluate(x).valuation() == x.valuation() for x in samples)


@dataclass
class PeriodicCheck:
    no_periodic_points: bool
    samples_checked: int
    residue_inconclusive: int
    n_max: int
    level: int

    def __bool__(self):
        return self.no_periodic_points

    def to_json(self):
        return {
            "no_periodic_points": self.no_periodic_points,
            "samples_checked": self.samples_checked,
            "residue_inconclusive": self.residue_inconclusive,
            "n_max": self.n_max,
            "level": self.level,
        }


def no_periodic_points_check(f: PowerSeries, profile: MultiplierProfile, a, n_max: int, k: int,
                             samples=None, precision: int = 40, seed: int = 0) -> PeriodicCheck:
    """No point of the punctured disc ``D_sigma(0)`` returns within ``n_max`` steps.

    Residue classes at level ``k`` only ever give inconclusive answers once a
    class returns (the quotient is finite); exact iteration on sampled points
    decides.
    """
    ctx = f.ctx
    e = ctx.e
    q_a = getattr(a, "q", a)
    q_s = sigma_q(profile, q_a)
    j0 = int(lattice_above(q_s, e) * e)
    inconclusive = 0
    if j0 < k:
        try:
            rmap = reduce_map(f, k)
        except ValueError:
            rmap = None
        if rmap is not None:
            check_size(rmap.ring.size)
            for code in range(rmap.ring.size):
                v = rmap.ring.valuation(code)
                if v < j0 or v >= k:
                    continue
                x = code
                for _ in range(n_max):
                    x = rmap.image(x)
                    if x == code:
                        inconclusive += 1
                        break
    if samples is None:
        samples = sample_disc(ctx, j0, 20, precision, seed)
    ok = True
    for x in samples:
        if x.is_zero():
            continue
        y = x
        for _ in range(n_max):
            y = f.evaluate(y)
            d = y - x
            if d.is_zero() or d.is_indistinguishable():
                ok = False
                break
        if not ok:
            break
    return PeriodicCheck(ok, len(samples), inconclusive, n_max, k)
