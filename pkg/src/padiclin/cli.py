"""Command-line front end.

Every subcommand prints one JSON document (sorted keys, exact rationals as
"num/den" strings) or, with ``--summary``, a short text report.  Exit codes:
0 on success, 2 when a precondition fails, 3 when the working precision runs
out.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import dynamics
from .linearize import (
    NotApplicable,
    PowerSeries,
    bk_bound,
    bk_quadratic_exact,
    conjugacy,
    conjugacy_oracle,
    growth_a,
    invert_series,
    max_injectivity_disc,
    maximality_extension,
    precision_budget,
    quadratic_dominance_check,
    sigma_estimate,
    tau_quadratic,
)
from .linearize.series import compose
from .multiplier import analyze_multiplier, distance_direct, distance_formula
from .padic import FieldContext, PrecisionError, parse_element, split_top_level
from .valuation import LogRadius, fraction_str

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PRECISION = 3
DEFAULT_PRECISION = 60


class CliError(ValueError):
    pass


# -- request parsing ---------------------------------------------------------------

def parse_ext(text):
    if text is None:
        return None
    kind, _, d = text.partition(":")
    if kind != "sqrt" or not d:
        raise CliError(f"--ext expects sqrt:<d>, got {text!r}")
    try:
        return int(d)
    except ValueError:
        raise CliError(f"--ext: {d!r} is not an integer") from None


def build_context(args) -> FieldContext:
    return FieldContext(args.p, parse_ext(args.ext))


def build_lambda(ctx, args):
    if args.lam is None:
        raise CliError("--lambda is required")
    return parse_element(ctx, args.lam, args.precision)


def build_series(ctx, args, lam) -> PowerSeries:
    tail = None
    if args.tail is not None:
        tail = LogRadius(Fraction(args.tail), ctx.p)
    if args.poly is None:
        return PowerSeries(ctx, [ctx.zero(), lam], tail)
    items = split_top_level(args.poly)
    coeffs = [parse_element(ctx, item, args.precision) for item in items]
    if len(coeffs) < 2:
        raise CliError("--poly needs at least a0,a1")
    if not coeffs[0].is_zero():
        raise CliError("--poly: a0 must be 0")
    if not coeffs[1].agrees_with(lam):
        raise CliError("--poly: a1 must equal --lambda")
    coeffs[1] = lam
    while len(coeffs) > 2 and coeffs[-1].is_zero():
        coeffs.pop()
    return PowerSeries(ctx, coeffs, tail)


def with_precision(args, precision):
    ns = argparse.Namespace(**vars(args))
    ns.precision = precision
    return ns


# -- subcommands --------------------------------------------------------------

def cmd_analyze(args):
    ctx = build_context(args)
    prof = analyze_multiplier(build_lambda(ctx, args))
    return prof.to_json()


def _radius_report(ctx, f, prof):
    g = growth_a(f)
    out = {"q_a": fraction_str(g.q), "a_attained": g.attained}
    inj = max_injectivity_disc(f)
    out["injectivity_disc"] = dict(inj.to_json(), note=inj.note)
    if g.q == math.inf:
        out["degenerate"] = "linear map: the conjugacy is the identity"
        return out
    est = sigma_estimate(prof, g.radius)
    out.update(est.to_json())
    mx = maximality_extension(prof, g.radius)
    out["maximality_condition"] = mx.to_json()
    try:
        if quadratic_dominance_check(f, prof):
            tau = tau_quadratic(prof, f.coeff(2))
            out["q_tau"] = fraction_str(tau.q_tau)
            out["case"] = tau.case
            out["closed_included"] = False
            out["subfield"] = tau.subfield.to_json()
            out["maximal"] = tau.maximal_in_subfield
    except NotApplicable:
        pass
    return out


def cmd_radius(args):
    ctx = build_context(args)
    lam = build_lambda(ctx, args)
    f = build_series(ctx, args, lam)
    return _radius_report(ctx, f, analyze_multiplier(lam))


def _auto_precision(args, ctx, notices):
    """Raise the working precision to the solver budget if needed."""
    lam = build_lambda(ctx, args)
    f = build_series(ctx, args, lam)
    prof = analyze_multiplier(lam)
    need = precision_budget(prof, args.degree, growth_a(f).q, args.output_precision)
    if need > args.precision:
        notices.append(f"precision raised from {args.precision} to {need}")
        args = with_precision(args, need)
        lam = build_lambda(ctx, args)
        f = build_series(ctx, args, lam)
        prof = analyze_multiplier(lam)
    return args, f, prof


def cmd_conjugacy(args):
    if args.degree is None or args.degree < 2:
        raise CliError("N >= 2 required (use --degree/-N)")
    ctx = build_context(args)
    notices = []
    args, f, prof = _auto_precision(args, ctx, notices)
    g = conjugacy(f, args.degree, args.output_precision, prof)
    coeffs = []
    for k in range(1, g.N + 1):
        c = g.b(k)
        coeffs.append({
            "k": k,
            "valuation": "inf" if c.is_zero() else fraction_str(c.valuation_bound()),
            "precision": fraction_str(c.precision),
            "components": c.to_json(),
        })
    return {
        "N": g.N,
        "precision": args.precision,
        "coefficients": coeffs,
        "residual_valuation": fraction_str(g.residual_valuation),
        "divisor_valuation_total": fraction_str(g.consumed),
        "notices": notices,
    }


def cmd_orbits(args):
    ctx = build_context(args)
    lam = build_lambda(ctx, args)
    f = build_series(ctx, args, lam)
    if args.level is None:
        raise CliError("--level is required")
    rep = dynamics.sphere_cycles(f, args.sphere, args.level, args.workers)
    return rep.to_json()


def cmd_verify(args):
    ctx = build_context(args)
    N = args.degree or 12
    notices = []
    args = with_precision(args, max(args.precision, 80))
    args.degree = N
    args, f, prof = _auto_precision(args, ctx, notices)
    results = {}
    lam = f.lam

    def record(name, fn):
        try:
            results[name] = bool(fn())
        except NotApplicable as exc:
            results[name] = f"skipped: {exc}"

    record("distance_formula_matches_direct",
           lambda: all(distance_formula(prof, n) == distance_direct(lam, n) for n in range(1, 51)))
    g = conjugacy(f, N, 0, prof)
    g_oracle = None
    if N <= 12:
        g_oracle = conjugacy_oracle(f, N)
        record("conjugacy_matches_oracle",
               lambda: all(g.b(k).agrees_with(g_oracle.b(k)) for k in range(1, N + 1)))
    gr = growth_a(f)
    if gr.q == math.inf:
        results["linear_map"] = True
        record("residual_zero", lambda: g.residual_valuation == math.inf or g.residual_valuation >= 0)
        return {"properties": results, "notices": notices}
    record("bk_bound", lambda: all(
        g.b(k).is_zero() or g.b(k).valuation() >= bk_bound(k, prof, gr.radius).general
        for k in range(2, N + 1)))
    h = invert_series(g.coeffs, N, ctx)

    def round_trip():
        gh = compose(g.coeffs, h, N, ctx)
        return gh[1].agrees_with(ctx.one()) and all(c.is_zero() or c.is_indistinguishable() for c in gh[2:])
    record("inverse_round_trip", round_trip)
    est = sigma_estimate(prof, gr.radius)
    j0 = int(est.subfield.radius.q * ctx.e)
    samples = dynamics.sample_disc(ctx, j0, 20, args.precision, seed=1)
    record("norm_preserved", lambda: dynamics.norm_preserved(g, samples))
    pairs = list(zip(samples[::2], samples[1::2]))
    record("isometry", lambda: dynamics.isometry_check(f, pairs))
    resid = dynamics.conjugacy_residual(f, g, samples, disc_q=est.q_sigma)
    results["conjugacy_residual_valuation"] = fraction_str(resid)
    try:
        if quadratic_dominance_check(f, prof):
            record("quadratic_closed_form", lambda: all(
                g.b(k).valuation() == bk_quadratic_exact(k, prof, f.coeff(2)) for k in range(2, N + 1)))
    except NotApplicable:
        pass
    if ctx.d is None:
        pc = dynamics.no_periodic_points_check(f, prof, gr.radius, 10, 3,
                                               samples=samples[:5], precision=args.precision)
        results["no_periodic_points"] = pc.no_periodic_points
    return {"properties": results, "notices": notices}


COMMANDS = {
    "analyze": cmd_analyze,
    "analyze-multiplier": cmd_analyze,
    "radius": cmd_radius,
    "conjugacy": cmd_conjugacy,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="the prime p")
    common.add_argument("--ext", help="quadratic extension, e.g. sqrt:3")
    common.add_argument("--lambda", dest="lam", help="multiplier: a/b, digits d..d;v, or (x,y)")
    common.add_argument("--poly", help='coefficients "a0,a1,a2,..." with a0 = 0 and a1 = lambda')
    common.add_argument("--tail", help="tail bound exponent q: |a_i| <= p^(-q(i-1)) beyond the list")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="absolute precision in digits")
    common.add_argument("--degree", "-N", type=int, dest="degree", help="truncation degree N")
    common.add_argument("--output-precision", type=int, default=0, dest="output_precision")
    common.add_argument("--level", type=int, help="quotient level k (modulus pi^k)")
    common.add_argument("--sphere", type=int, default=0, help="sphere index j (valuation j/e)")
    common.add_argument("--workers", type=int, default=1)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="style", action="store_const", const="json", default="json")
    fmt.add_argument("--pretty", dest="style", action="store_const", const="pretty")
    fmt.add_argument("--summary", dest="style", action="store_const", const="summary")

    parser = argparse.ArgumentParser(prog="padiclin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "radius", "conjugacy", "orbits", "verify"):
        aliases = ["analyze-multiplier"] if name == "analyze" else []
        sub.add_parser(name, parents=[common], aliases=aliases)
    return parser


def _summary(obj, indent=0):
    lines = []
    pad = "  " * indent
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_summary(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}: [{len(val)} entries]")
        else:
            lines.append(f"{pad}{key}: {val}")
    return lines


def render(obj, style):
    if style == "pretty":
        return json.dumps(obj, sort_keys=True, indent=2)
    if style == "summary":
        return "\n".join(_summary(obj))
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
    except PrecisionError as exc:
        err = {"error": "precision exhausted", "message": str(exc)}
        if exc.required is not None:
            err["required_precision"] = exc.required
        if exc.step is not None:
            err["step"] = exc.step
        if exc.consumed is not None:
            err["divisor_valuation_total"] = fraction_str(exc.consumed)
        print(render(err, "json"), file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, ZeroDivisionError) as exc:
        print(render({"error": "precondition", "message": str(exc)}, "json"), file=sys.stderr)
        return EXIT_PRECONDITION
    print(render(out, args.style))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
