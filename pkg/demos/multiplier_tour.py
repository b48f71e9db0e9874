"""Classify a few indifferent multipliers and compare |1 - lambda^n| with direct powers.

Run with ``python3 demos/multiplier_tour.py``.
"""

from padiclin import FieldContext
from padiclin.multiplier import analyze_multiplier, distance_direct_range, distance_formula

CASES = [
    ("Q_5", FieldContext(5), 2),
    ("Q_5", FieldContext(5), 7),
    ("Q_5", FieldContext(5), 6),
    ("Q_2", FieldContext(2), 3),
    ("Q_3(sqrt 3)", FieldContext(3, 3), (1, 1)),
    ("Q_5(sqrt 2)", FieldContext(5, 2), (1, 1)),
]


def make(ctx, value, precision=60):
    if isinstance(value, tuple):
        return ctx.element(*value, precision)
    return ctx.from_rational(value, 1, precision)


def main():
    print(f"{'field':<12} {'lambda':<8} {'m':>3} {'s':>2} {'ladder':>6} {'nu_1m':>6} {'nu_alpha':>8}  maximal")
    for name, ctx, value in CASES:
        lam = make(ctx, value)
        prof = analyze_multiplier(lam)
        print(f"{name:<12} {str(value):<8} {prof.m:>3} {prof.s:>2} {str(prof.on_ladder):>6} "
              f"{str(prof.nu_1m):>6} {str(prof.nu_alpha):>8}  {prof.maximal}")

    print()
    lam = make(FieldContext(5), 2)
    prof = analyze_multiplier(lam)
    direct = distance_direct_range(lam, 100)
    jumps = [(n, v) for n, v in enumerate(direct, 1) if v > 0 and n in (4, 8, 20, 40, 100)]
    print("lambda = 2 in Q_5, v(1 - 2^n) at a few n:")
    for n, v in jumps:
        print(f"  n = {n:3d}: direct {v}, formula {distance_formula(prof, n)}")
    agree = all(distance_formula(prof, n) == v for n, v in enumerate(direct, 1))
    print(f"formula agrees with direct powers for n <= 100: {agree}")


if __name__ == "__main__":
    main()
