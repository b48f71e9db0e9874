"""Power series ``f(x) = lambda x + sum a_i x**i`` and truncated series algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..padic import DEFAULT_PRECISION, FieldContext, FieldElement, PrecisionError
from ..valuation import DiscSpec, LogRadius

INF = math.inf


def coeff_valuation(c: FieldElement):
    """Valuation of a coefficient; exact zero gives ``inf``."""
    if c.is_zero():
        return INF
    return c.valuation()


class PowerSeries:
    """A series with ``a_0 = 0`` and ``a_1 = lambda`` over a field context.

    ``coeffs[i]`` is ``a_i`` for ``i <= D``.  The optional ``tail_bound`` is a
    radius ``T`` asserting ``|a_i| <= T**(i-1)`` for every ``i > D``; the
    tail itself is unknown, so evaluation uses only the finite part.
    """

    def __init__(self, ctx: FieldContext, coeffs, tail_bound: LogRadius | None = None):
        coeffs = list(coeffs)
        if len(coeffs) < 2:
            raise ValueError("need at least a_0 and a_1")
        if not coeffs[0].is_zero():
            raise ValueError("a_0 must be 0 (fixed point at the origin)")
        self.ctx = ctx
        self.coeffs = coeffs
        self.tail_bound = tail_bound

    @classmethod
    def from_values(cls, ctx: FieldContext, values, precision: int, tail_bound=None):
        """Build from rationals or ``(x, y)`` pairs meaning ``x + y*sqrt(d)``."""
        out = []
        for v in values:
            if isinstance(v, FieldElement):
                out.append(v)
            elif isinstance(v, tuple):
                x, y = v
                out.append(ctx.zero() if x == 0 and y == 0 else ctx.element(x, y, precision))
            else:
                out.append(ctx.zero() if v == 0 else ctx.element(v, 0, precision))
        return cls(ctx, out, tail_bound)

    @property
    def lam(self) -> FieldElement:
        return self.coeffs[1]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> FieldElement:
        if i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    @property
    def precision(self):
        return min(c.precision for c in self.coeffs)

    def is_linear(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[2:]) and self.tail_bound is None

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.evaluate(x)

    def __repr__(self):
        return f"PowerSeries(p={self.ctx.p}, d={self.ctx.d}, degree={self.degree})"


# -- growth and the injectivity disc ------------------------------------------

@dataclass(frozen=True)
class Growth:
    """``a = p**(-q)`` together with where the supremum is attained."""

    radius: LogRadius
    attained: bool
    index: int | None

    @property
    def q(self):
        return self.radius.q


def growth_a(f: PowerSeries) -> Growth:
    """``a = sup_{i>=2} |a_i|**(1/(i-1))`` in the log domain."""
    if not f.coeffs:
        raise ValueError("empty coefficient list")
    best = INF
    index = None
    for i, c in enumerate(f.coeffs[2:], start=2):
        v = coeff_valuation(c)
        if v == INF:
            continue
        q = Fraction(v) / (i - 1)
        if q < best:
            best, index = q, i
    tail = f.tail_bound
    if tail is not None and tail.q < best:
        return Growth(LogRadius(tail.q, f.ctx.p), False, None)
    return Growth(LogRadius(best, f.ctx.p), index is not None, index)


def max_injectivity_disc(f: PowerSeries) -> DiscSpec:
    """Largest disc about 0 on which ``f`` is bijective."""
    g = growth_a(f)
    if g.q == INF:
        return DiscSpec(LogRadius.infinite(f.ctx.p), False, note="degenerate: linear map")
    r = g.radius.inverse()
    if g.attained:
        return DiscSpec(r, False)
    return DiscSpec(r, True, note="closed, unverified boundary: convergence on S_{1/a} not decided")


@dataclass(frozen=True)
class WeierstrassData:
    s_img: LogRadius
    d: int
    d_prime: int
    tail_uncertain: bool = False


def weierstrass_data(f: PowerSeries, r: LogRadius) -> WeierstrassData:
    """Image radius ``max |a_i| r**i`` with the largest and smallest indices attaining it."""
    vals = []
    for i, c in enumerate(f.coeffs[1:], start=1):
        v = coeff_valuation(c)
        if v != INF:
            vals.append((v + i * r.q, i))
    if not vals:
        raise ValueError("zero series")
    top = min(v for v, _ in vals)
    idx = [i for v, i in vals if v == top]
    uncertain = False
    T = f.tail_bound
    if T is not None:
        slope = T.q + r.q
        if slope < 0:
            raise ValueError("radius lies outside the region where the tail bound guarantees convergence")
        D = f.degree
        tail_top = -T.q + (D + 1) * slope if slope > 0 else -T.q
        if tail_top <= top:
            uncertain = True
    return WeierstrassData(LogRadius(top, f.ctx.p), max(idx), min(idx), uncertain)


# -- truncated algebra ---------------------------------------------------------

def one_like(ctx, elements):
    """The element 1 held to more digits than any of ``elements``."""
    precs = [c.precision for c in elements if not c.is_zero()]
    top = max(precs) if precs else DEFAULT_PRECISION
    return ctx.one(math.ceil(top) + 1)


def zeros(ctx, n):
    z = ctx.zero()
    return [z] * n


def mul_trunc(A, B, N, ctx):
    """Product of coefficient lists modulo ``x**(N+1)``."""
    out = zeros(ctx, N + 1)
    nzA = [(i, c) for i, c in enumerate(A[:N + 1]) if not c.is_zero()]
    nzB = [(j, c) for j, c in enumerate(B[:N + 1]) if not c.is_zero()]
    for i, a in nzA:
        for j, b in nzB:
            if i + j > N:
                break
            out[i + j] = out[i + j] + a * b
    return out


def power_table(F, N, ctx, top=None):
    """``[F**0, F**1, ..., F**top]`` modulo ``x**(N+1)``; ``F`` has no constant term."""
    top = N if top is None else top
    one = one_like(ctx, F)
    table = [[one] + zeros(ctx, N)]
    for _ in range(top):
        table.append(mul_trunc(table[-1], F, N, ctx))
    return table


def compose(A, B, N, ctx, table=None):
    """``A(B(x))`` modulo ``x**(N+1)`` for ``B`` without constant term."""
    if table is None:
        table = power_table(B, N, ctx, top=min(N, len(A) - 1))
    out = zeros(ctx, N + 1)
    for l, a in enumerate(A[:N + 1]):
        if l == 0 or a.is_zero():
            if l == 0 and not a.is_zero():
                out[0] = out[0] + a
            continue
        row = table[l]
        for k in range(l, N + 1):
            if not row[k].is_zero():
                out[k] = out[k] + a * row[k]
    return out


def invert_series(g, N, ctx=None):
    """Compositional inverse of ``x + b_2 x**2 + ...`` modulo ``x**(N+1)``.

    ``g`` is a coefficient list (or anything with ``.coeffs``).  The inverse
    ``h`` is solved degree by degree from ``g(h(x)) = x``; the power table of
    ``h`` is extended one degree at a time, which only needs already known
    coefficients.
    """
    coeffs = list(getattr(g, "coeffs", g))
    if ctx is None:
        ctx = coeffs[1].ctx
    if len(coeffs) < 2 or not coeffs[1].agrees_with(one_like(ctx, coeffs)):
        raise ValueError("leading coefficient must be 1")
    coeffs = (coeffs + zeros(ctx, N + 1))[:N + 1]
    h = zeros(ctx, N + 1)
    h[1] = coeffs[1]
    # pw[l][k] = [x^k] h**l
    pw = [None, h] + [zeros(ctx, N + 1) for _ in range(N - 1)]
    for k in range(2, N + 1):
        # fill degree-k coefficients of h**l, l >= 2, from lower degrees
        for l in range(2, k + 1):
            prev = pw[l - 1]
            acc = ctx.zero()
            for i in range(1, k - l + 2):
                if not h[i].is_zero() and not prev[k - i].is_zero():
                    acc = acc + h[i] * prev[k - i]
            pw[l][k] = acc
        s = ctx.zero()
        for l in range(2, k + 1):
            if not coeffs[l].is_zero() and not pw[l][k].is_zero():
                s = s + coeffs[l] * pw[l][k]
        h[k] = -s
    return h


def lie_logarithm(f: PowerSeries, n: int, N: int):
    """``(f^{p**n} - id) / p**n`` modulo ``x**(N+1)``.

    ``f`` is treated as the polynomial of its finite coefficients.  The
    sequence in ``n`` is Cauchy when ``lambda = 1 mod pi``; for other
    multipliers apply it to the ``m``-th iterate.
    """
    ctx = f.ctx
    for c in f.coeffs:
        if not c.is_zero() and c.valuation() < 0:
            raise ValueError("Lie logarithm needs integral coefficients")
    F = (f.coeffs + zeros(ctx, N + 1))[:N + 1]
    table = power_table(F, N, ctx)
    it = F
    for _ in range(ctx.p ** n - 1):
        it = compose(it, F, N, ctx, table)
    out = list(it)
    out[1] = out[1] - one_like(ctx, out)
    out = [c.shift(-n) for c in out]
    for k, c in enumerate(out):
        if k and c.is_indistinguishable() and c.precision < 1:
            raise PrecisionError("Lie logarithm exhausted the working precision", step=k)
    return out


def evaluate_coeffs(coeffs, x: FieldElement, ctx: FieldContext) -> FieldElement:
    acc = ctx.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
