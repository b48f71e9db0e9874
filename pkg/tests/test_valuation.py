from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from padiclin.valuation import (
    DiscSpec,
    LogRadius,
    disc_in_subfield,
    factorial_valuation,
    legendre_valuation,
    locate_s,
    radius_ladder,
)


def test_factorial_examples():
    assert factorial_valuation(9, 3) == 4
    assert 362880 == 3 ** 4 * 4480
    assert factorial_valuation(4, 5) == 0
    assert factorial_valuation(8, 2) == 7


@given(st.integers(1, 5000), st.sampled_from([2, 3, 5, 7, 11]))
def test_factorial_matches_legendre(n, p):
    assert factorial_valuation(n, p) == legendre_valuation(n, p)


def test_factorial_rejects_zero():
    with pytest.raises(ValueError):
        factorial_valuation(0, 3)


def test_ladder_values():
    assert radius_ladder(1, 3).q == Fraction(1, 2)
    assert radius_ladder(2, 3).q == Fraction(1, 6)
    assert radius_ladder(0, 7).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_ladder_strictly_increasing(p):
    radii = [radius_ladder(t, p) for t in range(0, 8)]
    assert all(a < b for a, b in zip(radii, radii[1:]))
    assert radii[-1] < LogRadius(0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_locate_s_round_trip(p):
    for t in range(1, 7):
        pos = locate_s(radius_ladder(t, p), p)
        assert pos.s == t and pos.on_ladder


def test_locate_s_examples():
    assert locate_s(LogRadius(1), 3).s == 0
    assert not locate_s(LogRadius(1), 3).on_ladder
    pos = locate_s(LogRadius(Fraction(1, 2)), 3)
    assert (pos.s, pos.on_ladder) == (1, True)
    pos = locate_s(LogRadius(Fraction(1, 8)), 3)
    assert (pos.s, pos.on_ladder) == (2, False)
    with pytest.raises(ValueError):
        locate_s(LogRadius(0), 3)
    with pytest.raises(ValueError):
        locate_s(LogRadius.zero(), 3)


def test_disc_in_subfield_examples():
    d = disc_in_subfield(DiscSpec(LogRadius(Fraction(5, 6)), False), 2)
    assert d == DiscSpec(LogRadius(1), True)
    d = disc_in_subfield(DiscSpec(LogRadius(Fraction(5, 16)), False), 1)
    assert d == DiscSpec(LogRadius(1), True)
    closed = DiscSpec(LogRadius(1), True)
    assert disc_in_subfield(closed, 1) == closed


def test_open_lattice_disc_snaps_to_next_point():
    # open radius 1 in Q_5 is the closed disc of radius 1/5
    assert disc_in_subfield(DiscSpec(LogRadius(0), False), 1) == DiscSpec(LogRadius(1), True)


@given(st.fractions(min_value=-10, max_value=10), st.booleans(), st.sampled_from([1, 2, 4]))
def test_disc_in_subfield_idempotent(q, closed, e):
    d = disc_in_subfield(DiscSpec(LogRadius(q), closed), e)
    assert disc_in_subfield(d, e) == d
    assert d.is_rational(e)


def test_logradius_arithmetic_is_exact():
    r = LogRadius(Fraction(1, 3), 5)
    assert (r * r).q == Fraction(2, 3)
    assert (r ** Fraction(3, 2)).q == Fraction(1, 2)
    assert r.inverse().q == Fraction(-1, 3)
    assert math.isclose(r.as_float(), 5 ** (-1 / 3))
    assert r.to_json() == "1/3"
