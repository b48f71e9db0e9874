from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclin.linearize import (
    NotApplicable,
    PowerSeries,
    bk_quadratic_exact,
    boundary_fixed_point,
    conjugacy,
    maximality_extension,
    quadratic_dominance_check,
    sigma_estimate,
    sigma_lower_bound,
    tau_quadratic,
)
from padiclin.linearize.quadratic import boundary_gap, t_of_s
from padiclin.linearize.radius import sigma_q
from padiclin.multiplier import analyze_multiplier, profile_from_valuations
from padiclin.padic import FieldContext
from padiclin.valuation import DiscSpec, LogRadius, ladder_q

Q5 = FieldContext(5)
K33 = FieldContext(3, 3)
ONE = LogRadius(0)


def lam_k33(prec=60):
    return K33.element(1, 1, prec)


def test_sigma_case_one():
    prof = analyze_multiplier(Q5.from_rational(2, 1, 40))
    est = sigma_estimate(prof, ONE)
    assert est.case == "I"
    assert est.q_sigma == Fraction(5, 16)
    assert est.subfield == DiscSpec(LogRadius(1), True)
    assert est.maximal_in_subfield
    assert est.closed_included is None


def test_sigma_case_three():
    prof = analyze_multiplier(lam_k33())
    assert prof.on_ladder and prof.s == 1
    est = sigma_estimate(prof, ONE)
    assert est.case == "III"
    assert est.q_sigma == 1
    assert not est.maximal_in_subfield


def test_sigma_shrinks_as_alpha_approaches():
    qs = [sigma_q(profile_from_valuations(3, 1, Fraction(1, 2), Fraction(1, 2) + t, e=2), 0)
          for t in range(0, 40, 5)]
    assert all(a < b for a, b in zip(qs, qs[1:]))
    assert qs[-1] > 5


def test_lower_bound_examples():
    prof = analyze_multiplier(Q5.from_rational(2, 1, 40))
    assert sigma_lower_bound(prof, ONE) == sigma_q(prof, 0)
    prof = analyze_multiplier(lam_k33())
    assert sigma_lower_bound(prof, ONE) == 1
    # large m drives the bound towards 1/a
    q = [sigma_lower_bound(profile_from_valuations(p, p - 1, 1), ONE) for p in (5, 101, 10007)]
    assert q[0] > q[1] > q[2] > 0
    assert q[2] < Fraction(1, 1000)


def test_off_ladder_case_two():
    prof = profile_from_valuations(3, 1, Fraction(1, 4), e=4)
    assert not prof.on_ladder and prof.s == 1
    est = sigma_estimate(prof, ONE)
    assert est.case == "II"
    assert est.q_sigma == Fraction(1, 6) + Fraction(1, 4) * Fraction(5, 3)


PROFILES = st.builds(
    lambda p, m_idx, num, extra, qa: (p, m_idx, num, extra, qa),
    st.sampled_from([2, 3, 5, 7]), st.integers(0, 3), st.integers(1, 40),
    st.integers(0, 3), st.fractions(-3, 3),
)


@settings(max_examples=150, deadline=None)
@given(PROFILES)
def test_sigma_properties(data):
    p, m_idx, num, extra, qa = data
    e = p ** 3 * (p - 1)
    divisors = [d for d in range(1, p * p) if (p * p - 1) % d == 0]
    m = divisors[m_idx % len(divisors)]
    nu = Fraction(num, e)
    on = any(nu == ladder_q(t, p) for t in range(1, 5))
    prof = profile_from_valuations(p, m, nu, nu + extra if on else None, e=e, f=2)
    q = sigma_q(prof, qa)
    low = sigma_lower_bound(prof, qa)
    # sigma <= 1/a and the simpler bound is never larger than sigma
    assert q >= -qa
    assert low >= q
    if prof.s == 0:
        assert low == q


def test_sigma_off_ladder_matches_on_ladder_formula_with_alpha_one():
    a = profile_from_valuations(3, 1, Fraction(1, 4), e=4)
    b = profile_from_valuations(3, 1, Fraction(1, 4), Fraction(1, 4), e=4)
    assert sigma_q(a, 0) == sigma_q(b, 0)


def test_maximality_unramified_large_p():
    for p, n in ((5, 1), (7, 1), (5, 2), (11, 2)):
        m = p ** n - 1
        prof = profile_from_valuations(p, m, 1, e=1, f=n)
        v = maximality_extension(prof, ONE)
        assert v.holds and v.direct
        assert v.specialized == (p ** n - 3) * Fraction(p, p - 1)


def test_maximality_p3_is_sufficient_only():
    prof = profile_from_valuations(3, 2, 1)
    v = maximality_extension(prof, ONE)
    assert not v.holds
    assert v.direct  # the disc is still maximal
    assert any("sufficient-only" in c for c in v.caveats)


def test_maximality_quadratic_example_not_maximal():
    prof = analyze_multiplier(lam_k33())
    assert not sigma_estimate(prof, ONE).maximal_in_subfield
    v = maximality_extension(prof, ONE)
    assert not v.holds and not v.direct


def test_maximality_needs_integer_epsilon():
    prof = profile_from_valuations(3, 1, Fraction(1, 4), e=4)
    with pytest.raises(ValueError):
        maximality_extension(prof, ONE, e=2)


def test_tau_examples():
    prof = analyze_multiplier(lam_k33())
    one = K33.one(40)
    est = tau_quadratic(prof, one)
    assert est.q_tau == Fraction(5, 6)
    assert est.closed_included is False
    assert est.subfield == DiscSpec(LogRadius(1), True)
    assert not est.maximal_in_subfield
    # |sqrt 3| = 3**(-1/2): a = |a_2| is smaller, the disc grows by 1/2
    est = tau_quadratic(prof, K33.sqrt_d(40))
    assert est.q_tau == Fraction(1, 3)
    with pytest.raises(NotApplicable):
        tau_quadratic(analyze_multiplier(Q5.from_rational(2, 1, 40)), Q5.one())


def test_tau_rejects_unramified_base_field():
    prof = analyze_multiplier(Q5.from_rational(6, 1, 40))
    with pytest.raises(NotApplicable):
        tau_quadratic(prof, Q5.one())


def test_bk_quadratic_closed_form_examples():
    prof = analyze_multiplier(lam_k33())
    one = K33.one(40)
    assert bk_quadratic_exact(2, prof, one) == -Fraction(1, 2)
    # on the boundary |b_4| tau**4 = p**(-1/(p-1)) tau
    q_t = Fraction(5, 6)
    assert bk_quadratic_exact(4, prof, one) == -4 * q_t + Fraction(1, 2) + q_t


def test_bk_quadratic_matches_solver():
    prec = 140
    f = PowerSeries.from_values(K33, [0, (1, 1), 1], prec)
    prof = analyze_multiplier(f.lam)
    g = conjugacy(f, 50, profile=prof)
    for k in range(2, 51):
        assert g.b(k).valuation() == bk_quadratic_exact(k, prof, f.coeff(2)), k


def test_boundary_divergence_is_constant():
    prof = analyze_multiplier(lam_k33())
    one = K33.one(40)
    q_t = tau_quadratic(prof, one).q_tau
    vals = {bk_quadratic_exact(3 ** I + 1, prof, one) + (3 ** I + 1) * q_t for I in (1, 2, 3)}
    assert vals == {Fraction(1, 2) + q_t}


def test_dominance_examples():
    lam = (1, 1)
    f = PowerSeries.from_values(K33, [0, lam, Fraction(1, 3)], 60)
    assert quadratic_dominance_check(f)
    f = PowerSeries.from_values(K33, [0, lam, 1, 1], 60)
    assert not quadratic_dominance_check(f)
    f = PowerSeries.from_values(K33, [0, lam, Fraction(1, 9), 3], 60, LogRadius(1, 3))
    assert quadratic_dominance_check(f)
    f = PowerSeries.from_values(K33, [0, lam, Fraction(1, 9), 3], 60, LogRadius(-1, 3))
    assert not quadratic_dominance_check(f)


def test_dominated_series_follows_closed_form():
    f = PowerSeries.from_values(K33, [0, (1, 1), Fraction(1, 3), 1, 3], 160)
    prof = analyze_multiplier(f.lam)
    assert quadratic_dominance_check(f, prof)
    g = conjugacy(f, 30, profile=prof)
    for k in range(2, 31):
        assert g.b(k).valuation() == bk_quadratic_exact(k, prof, f.coeff(2)), k


def test_boundary_s_zero_never():
    prof = profile_from_valuations(5, 1, Fraction(1, 2), e=2)
    assert prof.s == 0
    v = boundary_fixed_point(prof, Fraction(-3))
    assert not v.paper_condition and not v.on_boundary


def test_boundary_criterion_disagrees_with_direct_check_for_s1():
    # p = 3, s = 1, v(1 - lambda) = 1/4, alpha = 1: the criterion says yes
    prof = profile_from_valuations(3, 1, Fraction(1, 4), e=4)
    v = boundary_fixed_point(prof, Fraction(0))
    assert v.paper_condition
    assert v.q_tau == Fraction(1, 2) and v.nu_xhat == Fraction(1, 4)
    assert not v.on_boundary
    # the gap q_tau - v(x_hat) does not depend on a_2, so no choice of a_2 helps
    assert boundary_gap(prof) == Fraction(1, 4)
    for a2 in (Fraction(-2), Fraction(1, 4), Fraction(3)):
        assert not boundary_fixed_point(prof, a2).on_boundary


@pytest.mark.parametrize("p", [3, 5, 7])
def test_boundary_gap_never_vanishes_for_small_s(p):
    e = p ** 3 * (p - 1)
    for num in range(1, e):
        nu = Fraction(num, e)
        on = any(nu == ladder_q(t, p) for t in range(1, 5))
        prof = profile_from_valuations(p, 1, nu, nu if on else None, e=e)
        if prof.s != 1:
            continue
        assert boundary_gap(prof) != 0


def test_t_of_s_lies_outside_the_quadratic_range():
    assert t_of_s(2, 3) == Fraction(1 * 3 * 2 + 3 - 1, 3 * 2)
    for p in (3, 5, 7):
        for s in (2, 3, 4, 5):
            # s >= 2 forces v(1 - lambda) < 1/(p(p-1)), while t(s) >= 1
            assert t_of_s(s, p) >= 1 > ladder_q(s, p)


@pytest.mark.parametrize("p", [3, 5])
def test_second_fixed_point_stays_outside_tau(p):
    # q_tau - v(x_hat) = 1/((p-1)p**s) + v(1 - lambda)(s(p-1) - 1)/p + (nu_alpha - nu_1m)/p**s
    e = p ** 3 * (p - 1)
    for num in range(1, e, 7):
        nu = Fraction(num, e)
        on = any(nu == ladder_q(t, p) for t in range(1, 5))
        for extra in ((0, 1) if on else (0,)):
            prof = profile_from_valuations(p, 1, nu, nu + extra, e=e)
            s = prof.s
            want = (Fraction(1, (p - 1) * p ** s) + nu * (s * (p - 1) - 1) / p
                    + Fraction(extra) / p ** s)
            if s == 0:
                want = Fraction(1, p - 1) - nu / p
            assert boundary_gap(prof) == want > 0
