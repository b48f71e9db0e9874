"""Estimate linearization discs and watch the conjugacy coefficients grow.

Run with ``python3 demos/linearization_disc.py``.
"""

from padiclin import FieldContext
from padiclin.linearize import (
    PowerSeries,
    bk_bound,
    bk_quadratic_exact,
    conjugacy,
    growth_a,
    sigma_estimate,
    tau_quadratic,
)
from padiclin.multiplier import analyze_multiplier


def report_q5():
    ctx = FieldContext(5)
    f = PowerSeries.from_values(ctx, [0, 2, 1], 80)
    prof = analyze_multiplier(f.lam)
    a = growth_a(f).radius
    est = sigma_estimate(prof, a)
    print("f(x) = 2x + x^2 over Q_5")
    print(f"  case {est.case}, sigma = 5^(-{est.q_sigma})")
    print(f"  in Q_5 this is the disc {est.subfield.to_json()}, maximal: {est.maximal_in_subfield}")
    g = conjugacy(f, 30, profile=prof)
    print("  k   v(b_k)   lower bound")
    for k in (2, 5, 6, 10, 21, 26, 30):
        print(f"  {k:2d}   {str(g.b(k).valuation()):>6}   {str(bk_bound(k, prof, a).general):>6}")
    print(f"  residual of g(f(x)) - lambda g(x) through degree 30: v >= {g.residual_valuation}")


def report_k33():
    ctx = FieldContext(3, 3)
    f = PowerSeries.from_values(ctx, [0, (1, 1), 1], 140)
    prof = analyze_multiplier(f.lam)
    tau = tau_quadratic(prof, f.coeff(2))
    print()
    print("f(x) = (1 + sqrt 3) x + x^2 over Q_3(sqrt 3)")
    print(f"  sigma = 3^(-{tau.q_sigma}), exact disc tau = 3^(-{tau.q_tau}), boundary excluded")
    g = conjugacy(f, 30, profile=prof)
    print("  k   solver   closed form   v(b_k) + k q_tau")
    for k in (2, 4, 5, 10, 11, 28):
        v = g.b(k).valuation()
        print(f"  {k:2d}   {str(v):>6}   {str(bk_quadratic_exact(k, prof, f.coeff(2))):>11}"
              f"   {str(v + k * tau.q_tau):>8}")
    print("  the last column returns to 4/3 at k = 3^I + 1, so g cannot converge on |x| = tau")


if __name__ == "__main__":
    report_q5()
    report_k33()
