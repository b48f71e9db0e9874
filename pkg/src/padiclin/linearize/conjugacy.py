"""The Schroeder conjugacy ``g(f(x)) = lambda g(x)`` and bounds on its coefficients.

Writing ``g(x) = x + sum b_k x**k`` and comparing coefficients of ``x**k``
gives

    b_k (lambda - lambda**k) = [x**k] sum_{l<k} b_l f(x)**l,

so each ``b_k`` is a finite expression in the earlier ones, divided by the
small divisor ``lambda - lambda**k = lambda (1 - lambda**(k-1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..multiplier import MultiplierProfile, analyze_multiplier, distance_formula
from ..padic import FieldElement, PrecisionError, vp
from ..valuation import LogRadius
from .series import PowerSeries, coeff_valuation, growth_a, mul_trunc, one_like, zeros

INF = math.inf
SAFETY_MARGIN = 5
ORACLE_MAX_N = 12


@dataclass
class ConjugacySeries:
    coeffs: list  # coeffs[0] = 0, coeffs[1] = 1, coeffs[k] = b_k
    residual_valuation: object = INF
    consumed: Fraction = Fraction(0)
    steps: list = field(default_factory=list)

    @property
    def N(self):
        return len(self.coeffs) - 1

    def b(self, k):
        return self.coeffs[k]

    def valuations(self):
        return {k: coeff_valuation(c) for k, c in enumerate(self.coeffs) if k >= 1}

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc


def sum_nu_direct(profile: MultiplierProfile, K: int) -> Fraction:
    """``sum_{n=1}^{K} v(1 - lambda**n)`` term by term."""
    return sum((distance_formula(profile, n) for n in range(1, K + 1)), Fraction(0))


def sum_nu(profile: MultiplierProfile, K: int) -> Fraction:
    """``sum_{n=1}^{K} v(1 - lambda**n)`` grouped by the p-adic order of ``n/m``.

    Only multiples ``n = m j`` contribute, and ``v(1 - lambda**n)`` depends
    on ``j`` only through ``v_p(j)``; there are
    ``floor(J/p**t) - floor(J/p**(t+1))`` values ``j <= J`` of order ``t``.
    """
    m, p = profile.m, profile.p
    J = K // m
    total = Fraction(0)
    t = 0
    while p ** t <= J:
        count = J // p ** t - J // p ** (t + 1)
        total += count * distance_formula(profile, m * p ** t)
        t += 1
    return total


def precision_budget(profile: MultiplierProfile, N: int, q_a=0, output_precision: int = 0) -> int:
    """Digits of input precision the solver needs to reach degree ``N``.

    The small divisors cost ``sum_{n<N} v(1 - lambda**n)`` digits; a
    coefficient bound ``a > 1`` costs a further ``(N-1) * (-q_a)`` because
    the ``b_k`` grow.
    """
    loss = sum_nu(profile, N - 1)
    growth = max(Fraction(0), -(N - 1) * Fraction(q_a)) if q_a != INF else Fraction(0)
    return math.ceil(loss + growth) + output_precision + SAFETY_MARGIN


def conjugacy(f: PowerSeries, N: int, output_precision: int = 0, profile=None) -> ConjugacySeries:
    """Solve for ``b_2, ..., b_N``.

    The powers ``f**l`` are built by repeated multiplication with the
    finite polynomial part of ``f`` (cost ``O(N**2 D)`` field operations).
    """
    if N < 2:
        raise ValueError("N >= 2 required")
    ctx = f.ctx
    lam = f.lam
    if profile is None:
        profile = analyze_multiplier(lam)
    if profile.horizon is not None and profile.horizon < N:
        raise PrecisionError("lambda is not certified to be a non-root of unity up to N",
                             required=None, step=profile.horizon + 1)
    q_a = growth_a(f).q
    need = precision_budget(profile, N, q_a, output_precision)
    have = f.precision
    if have < need:
        raise PrecisionError(
            f"input precision {have} below the budget {need} for degree {N}",
            required=need, consumed=sum_nu(profile, N - 1))
    F = (list(f.coeffs) + zeros(ctx, N + 1))[:N + 1]
    one = one_like(ctx, F)
    b = zeros(ctx, N + 1)
    b[1] = one
    # S[k] = [x^k] sum_l b_l f^l, accumulated as each power becomes available
    S = zeros(ctx, N + 1)
    P = F  # f**1
    lam_pow = lam
    consumed = Fraction(0)
    steps = []
    for k in range(2, N + 1):
        # add the contribution of b_{k-1} f**(k-1) to every degree
        l = k - 1
        if not b[l].is_zero():
            for j in range(l, N + 1):
                if not P[j].is_zero():
                    S[j] = S[j] + b[l] * P[j]
        if k < N + 1:
            P = mul_trunc(P, F, N, ctx)  # f**k
        lam_pow = lam_pow * lam  # lambda**k
        divisor = lam - lam_pow
        if divisor.is_zero() or divisor.is_indistinguishable():
            raise PrecisionError(f"small divisor lambda - lambda**{k} vanishes", step=k, consumed=consumed)
        consumed += distance_formula(profile, k - 1)
        if S[k].is_zero():
            b[k] = S[k]
        else:
            try:
                b[k] = S[k] / divisor
            except PrecisionError as exc:
                raise PrecisionError(str(exc), step=k, consumed=consumed) from None
        if output_precision > 0 and b[k].is_indistinguishable():
            raise PrecisionError(f"b_{k} is zero to working precision; no significant digits left",
                                 step=k, consumed=consumed, required=need + math.ceil(consumed))
        steps.append(k)
    # residual of g(f(x)) - lambda g(x) through degree N
    l = N
    if not b[l].is_zero():
        for j in range(l, N + 1):
            if not P[j].is_zero():
                S[j] = S[j] + b[l] * P[j]
    resid = INF
    for k in range(1, N + 1):
        r = S[k] - lam * b[k]
        if r.is_zero():
            continue
        resid = min(resid, r.valuation_bound())
    return ConjugacySeries(b, resid, consumed, steps)


def _partitions(k, parts, max_part):
    """Partitions of ``k`` into exactly ``parts`` parts, each ``<= max_part``, as count dicts."""
    def rec(rem, n, top):
        if n == 0:
            if rem == 0:
                yield {}
            return
        for part in range(min(top, rem - (n - 1)), 0, -1):
            if part * n < rem:
                break
            for rest in rec(rem - part, n - 1, part):
                out = dict(rest)
                out[part] = out.get(part, 0) + 1
                yield out
    yield from rec(k, parts, max_part)


def conjugacy_oracle(f: PowerSeries, N: int) -> ConjugacySeries:
    """``b_k`` from the explicit multinomial sum over index solutions.

    ``[x**k] f**l`` is expanded as the sum over ``alpha`` with
    ``sum alpha_i = l`` and ``sum i alpha_i = k`` of
    ``l!/prod(alpha_i!) * prod a_i**alpha_i``.  Exponential in ``N``.
    """
    if N > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to N <= {ORACLE_MAX_N}")
    if N < 2:
        raise ValueError("N >= 2 required")
    ctx = f.ctx
    lam = f.lam
    a = {i: f.coeff(i) for i in range(1, N + 1) if not f.coeff(i).is_zero()}
    b = zeros(ctx, N + 1)
    b[1] = one_like(ctx, list(a.values()))
    for k in range(2, N + 1):
        total = ctx.zero()
        for l in range(1, k):
            if b[l].is_zero():
                continue
            inner = ctx.zero()
            for alpha in _partitions(k, l, k):
                if any(i not in a for i in alpha):
                    continue
                coef = math.factorial(l)
                term = None
                for i, ai in alpha.items():
                    coef //= math.factorial(ai)
                    t = a[i] ** ai
                    term = t if term is None else term * t
                inner = inner + term.scale(coef)
            if not inner.is_zero():
                total = total + b[l] * inner
        denom = lam * (1 - lam ** (k - 1))
        b[k] = total if total.is_zero() else total / denom
    return ConjugacySeries(b)


@dataclass(frozen=True)
class BkBound:
    """Lower bounds for ``v(b_k)``.

    ``general`` is ``(k-1) q_a - sum_{n<k} v(1 - lambda**n)``; ``case_lemma``
    is ``1/(p-1) - (k-1) q_sigma``.  Once ``k - 1`` reaches the case base
    (``m``, ``m p**s`` on the ladder, ``m p**(s+1)`` off it) the case bound
    never exceeds ``general`` and equals it at the powers singled out by the
    case.  Below the base the factorial estimate behind it does not hold
    (it would need ``|0!| <= p**(-1/(p-1))``) and ``case_lemma`` may exceed
    ``general``; ``lemma_applies`` records which regime ``k`` is in.
    """

    k: int
    general: Fraction
    case_lemma: Fraction
    equality_expected: bool
    lemma_applies: bool = True


def case_base(profile: MultiplierProfile) -> int:
    m, p, s = profile.m, profile.p, profile.s
    if s == 0:
        return m
    if profile.on_ladder:
        return m * p ** s
    return m * p ** (s + 1)


def equality_index(k: int, profile: MultiplierProfile) -> bool:
    """Whether ``k`` is one of the indices where the case lemma is sharp."""
    p = profile.p
    base = case_base(profile)
    n = k - 1
    if n % base:
        return False
    r = n // base
    return r == p ** vp(r, p)


def bk_bound(k: int, profile: MultiplierProfile, a: LogRadius) -> BkBound:
    from .radius import sigma_q

    if k < 2:
        raise ValueError("k >= 2 required")
    q_a = a.q
    general = (k - 1) * q_a - sum_nu(profile, k - 1)
    case = Fraction(1, profile.p - 1) - (k - 1) * sigma_q(profile, q_a)
    return BkBound(k, general, case, equality_index(k, profile), k - 1 >= case_base(profile))
