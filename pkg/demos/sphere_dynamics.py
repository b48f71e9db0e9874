"""Cycle structure of maps on spheres, modulo growing powers of p.

Run with ``python3 demos/sphere_dynamics.py``.
"""

from padiclin import FieldContext
from padiclin.dynamics import minimality_verdict, sphere_cycles
from padiclin.linearize import PowerSeries
from padiclin.multiplier import transitivity_mod


def show(title, f, k_max):
    v = minimality_verdict(f, k_max=k_max)
    print(title)
    print(f"  verdict: minimal = {v.minimal} ({v.reason})")
    if v.witness is not None:
        print(f"  witness at level {v.witness.level}: cycle lengths {v.witness.multiset}")
    for r in v.evidence[-3:]:
        print(f"  level {r.level}, sphere {r.sphere}: {r.count} classes, cycles {r.multiset}")


def main():
    Q5 = FieldContext(5)
    show("f(x) = 2x + x^2 over Q_5", PowerSeries.from_values(Q5, [0, 2, 1], 40), 5)
    print()
    show("f(x) = 7x + x^2 over Q_5", PowerSeries.from_values(Q5, [0, 7, 1], 40), 4)
    print()
    K = FieldContext(5, 5)
    lam = K.element(1, 1, 20)
    r = transitivity_mod(lam, 3)
    print("lambda = 1 + sqrt 5 in Q_5(sqrt 5), multiplication on units mod pi^3:")
    print(f"  {r.count} classes, cycles {r.multiset}")
    f = PowerSeries.from_values(Q5, [0, 2, 1, 5], 40)
    r = sphere_cycles(f, 1, 6, workers=4)
    print()
    print(f"2x + x^2 + 5x^3 over Q_5, level 6, |x| = 1/5, four workers: cycles {r.multiset}")


if __name__ == "__main__":
    main()
