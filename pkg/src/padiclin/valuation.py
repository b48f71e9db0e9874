"""Radii in the log domain, the root-of-unity ladder R(t), factorial valuations.

A radius ``r = p**(-q)`` is stored as the exact exponent ``q``.  Larger
``q`` means a smaller radius, so comparisons on `LogRadius` are reversed with
respect to ``q``.  ``q = inf`` encodes the radius 0 and ``q = -inf`` an
infinite radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .padic import digit_sum

INF = math.inf


def _exp(q):
    if isinstance(q, float):
        if math.isinf(q):
            return q
        raise TypeError("radius exponents must be exact rationals")
    return Fraction(q)


@total_ordering
class LogRadius:
    """The radius ``p**(-q)``."""

    __slots__ = ("q", "p")

    def __init__(self, q, p: int | None = None):
        self.q = _exp(q)
        self.p = p

    @classmethod
    def zero(cls, p=None):
        return cls(INF, p)

    @classmethod
    def infinite(cls, p=None):
        return cls(-INF, p)

    def is_zero(self):
        return self.q == INF

    def is_infinite(self):
        return self.q == -INF

    def __eq__(self, other):
        if not isinstance(other, LogRadius):
            return NotImplemented
        return self.q == other.q

    def __hash__(self):
        return hash(self.q)

    def __lt__(self, other):
        if not isinstance(other, LogRadius):
            return NotImplemented
        return self.q > other.q

    def __mul__(self, other):
        """Product of radii: exponents add."""
        return LogRadius(self.q + other.q, self.p or other.p)

    def __truediv__(self, other):
        return LogRadius(self.q - other.q, self.p or other.p)

    def __pow__(self, r):
        """Rational power of a radius."""
        r = Fraction(r)
        if self.q in (INF, -INF):
            if r == 0:
                return LogRadius(0, self.p)
            return LogRadius(self.q if r > 0 else -self.q, self.p)
        return LogRadius(self.q * r, self.p)

    def inverse(self):
        return LogRadius(-self.q, self.p)

    def as_float(self, p: int | None = None) -> float:
        """Real value of the radius, for display only."""
        p = p or self.p
        if p is None:
            raise ValueError("prime needed to materialize a radius")
        if self.q == INF:
            return 0.0
        if self.q == -INF:
            return math.inf
        return float(p) ** (-float(self.q))

    def to_json(self):
        return fraction_str(self.q)

    def __repr__(self):
        return f"LogRadius(q={fraction_str(self.q)})"


def fraction_str(q) -> str:
    """Exact rational (or signed infinity) as a string "num/den"."""
    if q == INF:
        return "inf"
    if q == -INF:
        return "-inf"
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DiscSpec:
    """A disc about a center (the origin unless tagged otherwise)."""

    radius: LogRadius
    closed: bool
    center: str = "0"
    note: str | None = None

    def is_rational(self, e: int) -> bool:
        """Whether the radius lies in the value group ``p**((1/e)Z)``."""
        q = self.radius.q
        if q in (INF, -INF):
            return False
        return (q * e).denominator == 1

    def same_set_in(self, other: DiscSpec, e: int) -> bool:
        """Whether two discs have the same points in a field with ramification e."""
        return disc_in_subfield(self, e) == disc_in_subfield(other, e)

    def contains_radius(self, r: LogRadius) -> bool:
        """Whether points of absolute value ``r`` lie in the disc."""
        return r <= self.radius if self.closed else r < self.radius

    def to_json(self):
        return {"q": self.radius.to_json(), "closed": self.closed}


def factorial_valuation(n: int, p: int) -> Fraction:
    """``v_p(n!) = (n - S_n)/(p - 1)`` where ``S_n`` is the base-p digit sum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(n - digit_sum(n, p), p - 1)


def legendre_valuation(n: int, p: int) -> int:
    """``v_p(n!)`` by Legendre's sum of ``floor(n / p**i)``."""
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def ladder_q(t: int, p: int):
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return INF
    return Fraction(1, p ** (t - 1) * (p - 1))


def radius_ladder(t: int, p: int) -> LogRadius:
    """``R(0) = 0`` and ``R(t) = p**(-1/(p**(t-1)(p-1)))`` for ``t >= 1``."""
    return LogRadius(ladder_q(t, p), p)


@dataclass(frozen=True)
class LadderPosition:
    s: int
    on_ladder: bool


def locate_s(r: LogRadius, p: int) -> LadderPosition:
    """The unique ``s >= 0`` with ``R(s) <= r < R(s+1)``."""
    q = r.q if isinstance(r, LogRadius) else _exp(r)
    if q == INF:
        raise ValueError("radius 0 has no ladder position")
    if q <= 0:
        raise ValueError("radius must be < 1")
    if q > 1 / Fraction(p - 1):
        return LadderPosition(0, False)
    # q <= R(1)-exponent; find the t with ladder_q(t+1) < q <= ladder_q(t)
    t = 1
    while ladder_q(t + 1, p) >= q:
        t += 1
    return LadderPosition(t, q == ladder_q(t, p))


def lattice_ceil(q, e: int) -> Fraction:
    """Smallest element of ``(1/e)Z`` that is ``>= q``."""
    return Fraction(math.ceil(Fraction(q) * e), e)


def lattice_above(q, e: int) -> Fraction:
    """Smallest element of ``(1/e)Z`` strictly greater than ``q``."""
    q = Fraction(q)
    return Fraction(math.floor(q * e) + 1, e)


def disc_in_subfield(d: DiscSpec, e: int) -> DiscSpec:
    """Normal form of ``d`` intersected with a field with value group ``p**((1/e)Z)``.

    The result is the closed disc at the smallest lattice exponent whose
    sphere still lies in ``d``; as sets of K-points the two agree.
    """
    q = d.radius.q
    if q in (INF, -INF):
        return d
    if d.closed:
        qk = lattice_ceil(q, e)
    else:
        qk = lattice_above(q, e)
    return DiscSpec(LogRadius(qk, d.radius.p), True, d.center)
