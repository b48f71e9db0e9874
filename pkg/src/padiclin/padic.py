"""Exact arithmetic in Q_p and in quadratic extensions Q_p(sqrt d).

Elements carry an absolute precision: a Q_p number with precision ``N`` is
known modulo ``p**N``.  The only exact value is zero, which has valuation
``inf``; everything else is a capped-precision approximation whose precision
is propagated pessimistically through every operation.

A quadratic extension is represented componentwise, ``x = a + b*sqrt(d)``
with ``a, b`` in Q_p.  Two kinds of ``d`` are supported:

* ``d = p`` -- totally ramified, uniformizer ``sqrt(p)``, ``e = 2``;
* ``d`` a unit non-square -- unramified, ``f = 2`` (odd ``p`` only).

In both cases ``{1, sqrt d}`` is an integral basis, so the valuation of
``a + b*sqrt(d)`` is the minimum of the component valuations (shifted by
``1/2`` for the ``sqrt(p)`` component).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

INF = math.inf

# used only for 0**0, the one power with no precision to inherit
DEFAULT_PRECISION = 40


class PrecisionError(ArithmeticError):
    """Raised when a result is indistinguishable from zero at working precision."""

    def __init__(self, message, *, required=None, step=None, consumed=None):
        super().__init__(message)
        self.required = required
        self.step = step
        self.consumed = consumed


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


class QpNumber:
    """A p-adic number ``p**val * unit`` known modulo ``p**prec``.

    ``unit == 0`` means the number is zero to precision ``prec`` (then
    ``val == prec``).  ``prec == INF`` only for the exact zero.
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p, val, unit, prec):
        self.p = p
        self.val = val
        self.unit = unit
        self.prec = prec

    @classmethod
    def exact_zero(cls, p):
        return cls(p, INF, 0, INF)

    @classmethod
    def make(cls, p, n, scale, prec):
        """Normalize ``n * p**scale`` modulo ``p**prec``."""
        if prec == INF:
            if n != 0:
                raise ValueError("only zero can be exact")
            return cls.exact_zero(p)
        if n == 0 or scale >= prec:
            return cls(p, prec, 0, prec)
        v = scale
        while n % p == 0:
            n //= p
            v += 1
            if v >= prec:
                return cls(p, prec, 0, prec)
        return cls(p, v, n % p ** (prec - v), prec)

    @classmethod
    def from_rational(cls, p, num, den, prec):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num == 0:
            return cls.exact_zero(p)
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        if v >= prec:
            return cls(p, prec, 0, prec)
        mod = p ** (prec - v)
        return cls(p, v, num * pow(den, -1, mod) % mod, prec)

    def is_exact_zero(self):
        return self.prec == INF

    def is_zero(self):
        """True for exact zero and for zero-to-precision."""
        return self.unit == 0

    def __add__(self, other):
        if self.prec == INF:
            return other
        if other.prec == INF:
            return self
        w = min(self.val, other.val)
        n = self.unit * self.p ** (self.val - w) + other.unit * self.p ** (other.val - w)
        return QpNumber.make(self.p, n, w, min(self.prec, other.prec))

    def __neg__(self):
        if self.unit == 0:
            return self
        return QpNumber(self.p, self.val, (-self.unit) % self.p ** (self.prec - self.val), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.prec == INF or other.prec == INF:
            return QpNumber.exact_zero(self.p)
        prec = min(self.prec + other.val, other.prec + self.val)
        return QpNumber.make(self.p, self.unit * other.unit, self.val + other.val, prec)

    def scale(self, n: int):
        """Multiply by the exact integer ``n``."""
        if n == 0 or self.prec == INF:
            return QpNumber.exact_zero(self.p)
        v = vp(n, self.p)
        u = n // self.p ** v
        return QpNumber.make(self.p, self.unit * u, self.val + v, self.prec + v)

    def shift(self, k: int):
        """Multiply by ``p**k`` exactly (``k`` may be negative)."""
        if self.prec == INF:
            return self
        return QpNumber(self.p, self.val + k, self.unit, self.prec + k)

    def inverse(self):
        if self.prec == INF:
            raise ZeroDivisionError("division by exact zero")
        if self.unit == 0:
            raise PrecisionError("division by an element indistinguishable from zero")
        r = self.prec - self.val
        return QpNumber(self.p, -self.val, pow(self.unit, -1, self.p ** r), self.prec - 2 * self.val)

    def residue_int(self, k: int) -> int:
        """The integer in ``[0, p**k)`` congruent to this number mod ``p**k``."""
        if self.prec == INF:
            return 0
        if self.val < 0:
            raise ValueError("not a p-adic integer")
        if self.prec < k:
            raise PrecisionError(f"need {k} digits, have {self.prec}")
        if self.val >= k:
            return 0
        return self.unit * self.p ** self.val % self.p ** k

    def digits(self):
        """Base-p digits of the unit part, lowest first, up to precision."""
        if self.unit == 0:
            return []
        out = []
        n = self.unit
        for _ in range(self.prec - self.val):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    def __repr__(self):
        if self.prec == INF:
            return "0"
        if self.unit == 0:
            return f"O({self.p}^{self.prec})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec})"


@dataclass(frozen=True)
class FieldContext:
    """Q_p, or Q_p(sqrt d) with ``d = p`` (ramified) or ``d`` a unit non-square."""

    p: int
    d: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.d is None:
            return
        p, d = self.p, self.d
        if d == p:
            return
        if p == 2:
            raise ValueError("for p = 2 only the extension sqrt(2) is supported")
        if d % p == 0:
            raise ValueError(f"d = {d} must be p or a p-adic unit")
        if pow(d % p, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"{d} is a square in Q_{p}")

    @property
    def e(self) -> int:
        return 2 if self.d == self.p else 1

    @property
    def f_deg(self) -> int:
        return 2 if self.d is not None and self.d != self.p else 1

    @property
    def degree(self) -> int:
        return self.e * self.f_deg

    @property
    def residue_size(self) -> int:
        return self.p ** self.f_deg

    @property
    def sqrt_weight(self) -> Fraction:
        """Valuation of sqrt(d)."""
        return Fraction(1, 2) if self.e == 2 else Fraction(0)

    def zero(self) -> FieldElement:
        z = QpNumber.exact_zero(self.p)
        return FieldElement(self, z, None if self.d is None else z)

    def from_rational(self, num: int, den: int = 1, precision: int = DEFAULT_PRECISION) -> FieldElement:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return self.element(Fraction(num, den), 0, precision)

    def one(self, precision: int = DEFAULT_PRECISION) -> FieldElement:
        return self.element(1, 0, precision)

    def element(self, x, y=0, precision: int = DEFAULT_PRECISION) -> FieldElement:
        """``x + y*sqrt(d)`` for rationals ``x, y`` at absolute precision."""
        x = Fraction(x)
        y = Fraction(y)
        a = QpNumber.from_rational(self.p, x.numerator, x.denominator, precision)
        if self.d is None:
            if y:
                raise ValueError("base field has no sqrt component")
            return FieldElement(self, a, None)
        b = QpNumber.from_rational(self.p, y.numerator, y.denominator, precision)
        return FieldElement(self, a, b)

    def sqrt_d(self, precision: int = DEFAULT_PRECISION) -> FieldElement:
        if self.d is None:
            raise ValueError("base field has no sqrt(d)")
        return self.element(0, 1, precision)

    def uniformizer(self, precision: int = DEFAULT_PRECISION) -> FieldElement:
        return self.sqrt_d(precision) if self.e == 2 else self.from_rational(self.p, 1, precision)

    def from_components(self, a: QpNumber, b: QpNumber | None = None) -> FieldElement:
        if self.d is None:
            return FieldElement(self, a, None)
        return FieldElement(self, a, b if b is not None else QpNumber.exact_zero(self.p))


def from_rational(ctx: FieldContext, num: int, den: int, precision: int) -> FieldElement:
    return ctx.from_rational(num, den, precision)


class FieldElement:
    """Immutable element of a `FieldContext`."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: FieldContext, a: QpNumber, b: QpNumber | None):
        self.ctx = ctx
        self.a = a
        self.b = b

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        """Exact zero (valuation +inf)."""
        return self.a.prec == INF and (self.b is None or self.b.prec == INF)

    def is_indistinguishable(self) -> bool:
        """Zero to working precision but not exactly zero."""
        return not self.is_zero() and self.a.unit == 0 and (self.b is None or self.b.unit == 0)

    @property
    def precision(self):
        if self.b is None:
            return self.a.prec
        return min(self.a.prec, self.b.prec + self.ctx.sqrt_weight)

    def valuation(self):
        """Normalized valuation (``v(p) = 1``) as a Fraction, or ``INF``."""
        if self.b is None:
            if self.a.prec == INF:
                return INF
            if self.a.unit == 0:
                raise PrecisionError("valuation of an element indistinguishable from zero")
            return Fraction(self.a.val)
        if self.is_zero():
            return INF
        w = self.ctx.sqrt_weight
        known = []
        bound = INF
        for c, shift in ((self.a, 0), (self.b, w)):
            if c.prec == INF:
                continue
            if c.unit:
                known.append(c.val + shift)
            else:
                bound = min(bound, c.prec + shift)
        if known and min(known) <= bound:
            return Fraction(min(known))
        raise PrecisionError("valuation of an element indistinguishable from zero")

    def valuation_bound(self):
        """Valuation if known, else the precision (a lower bound)."""
        try:
            return self.valuation()
        except PrecisionError:
            return Fraction(self.precision)

    def abs_log(self):
        """Alias of `valuation`: |x| = p**(-valuation)."""
        return self.valuation()

    def agrees_with(self, other: FieldElement) -> bool:
        """Equal up to the precision both operands share."""
        d = self - other
        return d.is_zero() or d.is_indistinguishable()

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            prec = self.precision
            if prec == INF:
                prec = DEFAULT_PRECISION
            return self.ctx.element(other, 0, int(math.ceil(prec)) + 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.b is None:
            return FieldElement(self.ctx, self.a + other.a, None)
        return FieldElement(self.ctx, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, -self.a, None if self.b is None else -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.b is None:
            return FieldElement(self.ctx, self.a * other.a, None)
        a, b, c, e = self.a, self.b, other.a, other.b
        re = a * c + (b * e).scale(self.ctx.d)
        im = a * e + b * c
        return FieldElement(self.ctx, re, im)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, n: int) -> FieldElement:
        """Multiply by an exact integer."""
        return FieldElement(self.ctx, self.a.scale(n), None if self.b is None else self.b.scale(n))

    def shift(self, k: int) -> FieldElement:
        """Multiply by ``p**k`` exactly."""
        return FieldElement(self.ctx, self.a.shift(k), None if self.b is None else self.b.shift(k))

    def conjugate(self) -> FieldElement:
        if self.b is None:
            return self
        return FieldElement(self.ctx, self.a, -self.b)

    def norm(self) -> QpNumber:
        if self.b is None:
            return self.a
        return self.a * self.a - (self.b * self.b).scale(self.ctx.d)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("division by exact zero")
        if self.is_indistinguishable():
            raise PrecisionError("division by an element indistinguishable from zero")
        if self.b is None:
            return FieldElement(self.ctx, self.a.inverse(), None)
        ninv = self.norm().inverse()
        return FieldElement(self.ctx, self.a * ninv, -(self.b * ninv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            if other.is_zero():
                raise ZeroDivisionError("division by exact zero")
            return self
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            prec = self.precision
            return self.ctx.one(DEFAULT_PRECISION if prec == INF else math.ceil(prec) + 1)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- residues and display ----------------------------------------------

    def residue_components(self, k: int) -> tuple[int, int]:
        """Integers ``(a, b)`` giving this element modulo ``pi**k``.

        ``a`` is taken mod ``p**A`` and ``b`` mod ``p**B`` where ``(A, B)`` are
        the component exponents of the ideal ``pi**k`` (see `ResidueRing`).
        """
        A, B = residue_exponents(self.ctx, k)
        a = self.a.residue_int(A)
        b = 0 if self.b is None or B == 0 else self.b.residue_int(B)
        return a, b

    def to_json(self):
        comps = [self.a] if self.b is None else [self.a, self.b]
        out = []
        for c in comps:
            if c.prec == INF:
                out.append({"exact_zero": True})
            else:
                out.append({
                    "valuation": str(c.val),
                    "precision": str(c.prec),
                    "digits": c.digits(),
                })
        return out

    def __repr__(self):
        if self.b is None:
            return f"FieldElement({self.a!r})"
        return f"FieldElement({self.a!r} + ({self.b!r})*sqrt({self.ctx.d}))"


def arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# -- residue rings O / pi^k -------------------------------------------------

def residue_exponents(ctx: FieldContext, k: int) -> tuple[int, int]:
    """Exponents ``(A, B)`` with ``pi**k O = p**A Z_p + p**B Z_p sqrt(d)``."""
    if ctx.d is None:
        return k, 0
    if ctx.e == 2:
        return (k + 1) // 2, k // 2
    return k, k


class ResidueRing:
    """The finite ring ``O / pi**k`` with classes encoded as ints ``a + p**A * b``."""

    def __init__(self, ctx: FieldContext, k: int):
        if k < 1:
            raise ValueError("level must be >= 1")
        self.ctx = ctx
        self.k = k
        self.A, self.B = residue_exponents(ctx, k)
        self.modA = ctx.p ** self.A
        self.modB = ctx.p ** self.B
        self.size = self.modA * self.modB

    def encode(self, a: int, b: int = 0) -> int:
        return a % self.modA + self.modA * (b % self.modB)

    def decode(self, i: int) -> tuple[int, int]:
        return i % self.modA, i // self.modA

    def reduce(self, x: FieldElement) -> int:
        return self.encode(*x.residue_components(self.k))

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        a, b = x
        c, e = y
        d = self.ctx.d or 0
        return (a * c + d * b * e) % self.modA, (a * e + b * c) % self.modB

    def valuation(self, i: int) -> int:
        """Valuation in units of pi, capped at ``k``."""
        p = self.ctx.p
        a, b = self.decode(i)
        if self.ctx.d is None:
            return _capped_vp(a, p, self.k)
        va = _capped_vp(a, p, self.A)
        vb = _capped_vp(b, p, self.B)
        if self.ctx.e == 2:
            return min(2 * va if a else self.k, 2 * vb + 1 if b else self.k, self.k)
        return min(va, vb, self.k)

    def sphere(self, j: int) -> list[int]:
        """Classes of valuation exactly ``j`` (in pi units), ``0 <= j < k``."""
        if not 0 <= j < self.k:
            raise ValueError("sphere index must satisfy 0 <= j < k")
        return [i for i in range(self.size) if self.valuation(i) == j]

    def sphere_size(self, j: int) -> int:
        q = self.ctx.residue_size
        return (q - 1) * q ** (self.k - j - 1)


def _capped_vp(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


# -- truncated power series over F_p ------------------------------------------

class CharPSeries:
    """A power series over F_p known modulo ``t**N``."""

    def __init__(self, p: int, coeffs, N: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        coeffs = [int(c) % p for c in coeffs]
        if N is None:
            N = len(coeffs)
        if N < 1:
            raise ValueError("truncation order must be >= 1")
        coeffs = (coeffs + [0] * N)[:N]
        self.p = p
        self.N = N
        self.coeffs = np.array(coeffs, dtype=np.int64)

    def mul(self, other: CharPSeries, N: int) -> np.ndarray:
        prod = np.convolve(self._padded(N), other._padded(N))[:N]
        return prod % self.p

    def _padded(self, N):
        out = np.zeros(N, dtype=np.int64)
        m = min(N, self.N)
        out[:m] = self.coeffs[:m]
        return out

    def pow_trunc(self, n: int, N: int) -> np.ndarray:
        """Coefficients of ``self**n`` modulo ``t**N``."""
        p = self.p
        result = np.zeros(N, dtype=np.int64)
        result[0] = 1
        base = self._padded(N)
        while n:
            if n & 1:
                result = np.convolve(result, base)[:N] % p
            n >>= 1
            if n:
                base = np.convolve(base, base)[:N] % p
        return result


def charp_pow_check(x: CharPSeries, n: int) -> bool:
    """Whether ``x**(p**n) == 1 mod t**(p**n)`` for ``x == 1 mod t``."""
    if x.coeffs[0] != 1:
        raise ValueError("x must be congruent to 1 mod t")
    q = x.p ** n
    y = x.pow_trunc(q, q)
    return bool(y[0] == 1 and not y[1:].any())


# -- textual input ------------------------------------------------------------

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _parse_rational(text: str, where: int = 0) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text.strip()!r} at position {where}: {exc}") from None


def _parse_digits(text: str, p: int, where: int = 0) -> tuple[int, int, int]:
    """``"d_k...d_0;v"`` to ``(value, shift, digit count)``; digits separated by '.' when p > 36."""
    body, _, shift = text.partition(";")
    try:
        v = int(shift)
    except ValueError:
        raise ValueError(f"bad valuation shift {shift!r} at position {where + len(body) + 1}") from None
    body = body.strip()
    parts = body.split(".") if "." in body else list(body)
    if not parts or parts == [""]:
        raise ValueError(f"empty digit string at position {where}")
    n = 0
    for i, ch in enumerate(parts):
        d = int(ch) if "." in body else _DIGITS.find(ch.lower())
        if not 0 <= d < p:
            raise ValueError(f"digit {ch!r} at position {where + i} is not a base-{p} digit")
        n = n * p + d
    return n, v, len(parts)


def parse_element(ctx: FieldContext, text: str, precision: int = DEFAULT_PRECISION) -> FieldElement:
    """Element from a rational ``"a/b"``, digits ``"d_k...d_0;v"`` or a pair ``"(x, y)"``.

    A pair may carry a trailing ``sqrt(d)`` or ``√d`` tag, which must match
    the context.  Digit strings fix their own precision (``v`` plus the
    number of digits).
    """
    s = text.strip()
    if not s:
        raise ValueError("empty element")
    if s.startswith("("):
        close = s.find(")")
        if close < 0:
            raise ValueError(f"unclosed parenthesis at position {len(s)}")
        inner = s[1:close]
        tag = s[close + 1:].replace(" ", "")
        if tag:
            d = tag.removeprefix("√").removeprefix("sqrt").strip("()")
            if ctx.d is None or d != str(ctx.d):
                raise ValueError(f"tag {tag!r} at position {close + 1} does not match the field")
        if ctx.d is None:
            raise ValueError("pair syntax needs a quadratic extension")
        x, sep, y = inner.partition(",")
        if not sep:
            raise ValueError(f"expected ',' inside the pair at position 1")
        return ctx.element(_parse_rational(x, 1), _parse_rational(y, 2 + len(x)), precision)
    if ";" in s:
        n, v, ndig = _parse_digits(s, ctx.p)
        prec = v + ndig
        if n == 0:
            return ctx.element(0, 0, prec) if prec > 0 else ctx.zero()
        return ctx.from_rational(n, 1, prec - v).shift(v)
    q = _parse_rational(s)
    if q == 0:
        return ctx.zero()
    return ctx.element(q, 0, precision)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced ')' at position {i}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ValueError("unbalanced '('")
    out.append("".join(cur))
    return out
