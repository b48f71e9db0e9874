from fractions import Fraction
import math

import pytest
from hypothesis import given, settings, strategies as st

from padiclin.padic import (
    CharPSeries,
    FieldContext,
    PrecisionError,
    ResidueRing,
    arith,
    charp_pow_check,
    from_rational,
    parse_element,
    split_top_level,
)

Q3 = FieldContext(3)
Q5 = FieldContext(5)
K33 = FieldContext(3, 3)  # ramified
K52 = FieldContext(5, 2)  # unramified


def test_from_rational_15_in_Q5():
    x = from_rational(Q5, 15, 1, 20)
    assert x.valuation() == 1
    assert x.a.digits()[0] == 3


def test_from_rational_one_half_in_Q3():
    x = from_rational(Q3, 1, 2, 10)
    assert x.valuation() == 0
    # ...1111112 in base 3, lowest digit first
    assert x.a.digits() == [2] + [1] * 9
    # oracle: 2x = 1 mod 3^10 by plain integer arithmetic
    assert (2 * x.a.unit) % 3 ** 10 == 1


def test_from_rational_zero_is_exact():
    z = from_rational(Q5, 0, 7, 20)
    assert z.is_zero()
    assert z.valuation() == math.inf


def test_from_rational_errors():
    with pytest.raises(ZeroDivisionError):
        from_rational(Q5, 1, 0, 10)
    with pytest.raises(ValueError):
        FieldContext(6)


def test_context_validation():
    assert K33.e == 2 and K33.f_deg == 1
    assert K52.e == 1 and K52.f_deg == 2
    with pytest.raises(ValueError):
        FieldContext(5, 4)  # 4 is a square
    with pytest.raises(ValueError):
        FieldContext(5, 10)  # neither p nor a unit
    with pytest.raises(ValueError):
        FieldContext(2, 5)  # only sqrt(2) over Q_2
    assert FieldContext(2, 2).e == 2


def test_norm_identity_in_ramified_extension():
    x = K33.element(1, 1, 20)
    y = K33.element(1, -1, 20)
    assert arith(x, y, "mul").agrees_with(K33.element(-2, 0, 20))


def test_half_plus_half():
    h = Q5.from_rational(1, 2, 20)
    assert arith(h, h, "add").agrees_with(Q5.one(20))


def test_valuation_of_sqrt3_plus_3():
    assert (K33.sqrt_d(20) + 3).valuation() == Fraction(1, 2)


def test_pow_examples():
    x = Q5.from_rational(2, 1, 20) ** 4
    assert x.agrees_with(Q5.from_rational(16, 1, 20))
    assert (1 - x).valuation() == 1
    lam = K33.element(1, 1, 30)
    c = lam ** 3
    assert c.agrees_with(K33.element(10, 6, 30))
    assert (1 - c).valuation() == Fraction(3, 2)
    assert (lam ** 0).agrees_with(K33.one())


def test_division_errors_are_distinct():
    x = Q5.one(10)
    with pytest.raises(ZeroDivisionError):
        x / Q5.zero()
    tiny = Q5.from_rational(5 ** 12, 1, 10)  # zero at precision 10
    assert tiny.is_indistinguishable()
    with pytest.raises(PrecisionError):
        x / tiny


def test_precision_propagates_through_division():
    x = Q5.from_rational(1, 1, 20)
    y = Q5.from_rational(25, 1, 20)
    z = x / y
    assert z.valuation() == -2
    # dividing by an element of valuation 2 costs digits, never invents them
    assert z.precision <= 20 - 2


def test_unramified_valuation():
    assert K52.element(5, 25, 20).valuation() == 1
    assert K52.element(25, 5, 20).valuation() == 1
    assert K52.element(0, 1, 20).valuation() == 0


def test_parse_element_forms():
    x = parse_element(Q3, "1112;0")
    assert x.a.unit == 41 and x.precision == 4
    y = parse_element(Q3, "12;-1")
    assert y.valuation() == -1
    z = parse_element(K33, "(1, 1)√3", 20)
    assert z.agrees_with(K33.element(1, 1, 20))
    w = parse_element(K33, "(1/3, 0)sqrt(3)", 20)
    assert w.valuation() == -1
    assert parse_element(Q5, "3/10", 20).valuation() == -1
    with pytest.raises(ValueError):
        parse_element(Q3, "13;0")  # 3 is not a base-3 digit
    with pytest.raises(ValueError):
        parse_element(Q3, "(1,1)")


def test_split_top_level():
    assert split_top_level("0,(1,1),1/3") == ["0", "(1,1)", "1/3"]
    with pytest.raises(ValueError):
        split_top_level("0,(1,1")


def test_residue_ring_sphere_counts():
    for ctx in (Q5, K33, K52):
        for k in (1, 2, 3):
            ring = ResidueRing(ctx, k)
            assert ring.size == ctx.residue_size ** k
            for j in range(k):
                assert len(ring.sphere(j)) == ring.sphere_size(j)


def test_charp_examples():
    assert charp_pow_check(CharPSeries(3, [1, 1]), 2)
    assert charp_pow_check(CharPSeries(2, [1, 1, 1]), 3)
    assert charp_pow_check(CharPSeries(3, [1]), 1)
    with pytest.raises(ValueError):
        charp_pow_check(CharPSeries(3, [2, 1]), 1)


def test_charp_frobenius_explicitly():
    # (1+t)^9 = 1 + t^9 over F_3
    y = CharPSeries(3, [1, 1]).pow_trunc(9, 12)
    assert list(y) == [1] + [0] * 8 + [1, 0, 0]


# -- properties -------------------------------------------------------------------

PREC = 30


def elements(ctx):
    p = ctx.p

    @st.composite
    def build(draw):
        v = draw(st.integers(-3, 5))
        a = draw(st.integers(1, p ** 8))
        b = draw(st.integers(0, p ** 8)) if ctx.d is not None else 0
        x = ctx.element(a, b, PREC)
        if x.is_indistinguishable():
            x = ctx.one(PREC)
        return x.shift(v)

    return build()


@pytest.mark.parametrize("ctx", [Q3, Q5, K33, K52, FieldContext(2), FieldContext(2, 2)])
def test_valuation_laws(ctx):
    @settings(max_examples=60, deadline=None)
    @given(elements(ctx), elements(ctx))
    def check(x, y):
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = x + y
        if not s.is_indistinguishable():
            assert s.valuation() >= min(x.valuation(), y.valuation())
            if x.valuation() != y.valuation():
                assert s.valuation() == min(x.valuation(), y.valuation())
        assert ((x / y) * y).agrees_with(x)
        assert (x.valuation() * ctx.e).denominator == 1

    check()
