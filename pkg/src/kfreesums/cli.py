"""Command-line workbench tying the library together.

Subcommands: sieve, sum, mertens, verify-budget, distance, fit, figure1,
compare, run.  All file outputs are deterministic for a fixed invocation
(independent of --threads); timings go to stdout only.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import fit_exponent, figure1, power_envelope, envelope_ratio
from .characters import build_real_character
from .constructions import (
    DeviationBudget,
    ModificationPlan,
    completed_character,
    modified_character,
    pretentious_distance,
    verify_deviation_budget,
)
from .errors import ConfigError, KfreesumsError
from .experiment import compare_methods, load_config, run_experiment
from .rules import character_rule
from .sieve import build_spf, sieve_kfree_segment, sieve_mobius_segment, sieve_primes
from .summatory import (
    PartialSumSeries,
    checkpoint_schedule,
    direct_summatory,
    explicit_split,
    mertens,
    mertens_recursive,
    optimal_split,
    sqrt_split,
)


def _load_plan(path: str | None, modulus: int) -> ModificationPlan | None:
    if path is None:
        return None
    plan = ModificationPlan.from_json(Path(path).read_text())
    if plan.character.modulus != modulus:
        raise ConfigError(
            f"plan modulus {plan.character.modulus} disagrees with --modulus {modulus}"
        )
    return plan


def _rule_from_args(args) -> tuple:
    chi = build_real_character(args.modulus)
    plan = _load_plan(getattr(args, "plan", None), args.modulus)
    g = modified_character(plan) if plan else character_rule(chi)
    k = getattr(args, "k", None)
    f = g.truncated(k) if k else g
    return f, g, chi


def _add_common(p: argparse.ArgumentParser, *, k_default=None) -> None:
    p.add_argument("--modulus", type=int, default=3, help="character modulus q (default 3)")
    p.add_argument("--limit", type=int, required=True, help="upper bound X")
    p.add_argument("--plan", type=str, default=None, help="modification plan JSON file")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--schedule", type=float, default=1.05, help="checkpoint ratio (> 1)")
    if k_default is not None:
        p.add_argument("--k", type=int, default=k_default, help="k-free order (>= 2)")


def cmd_sieve(args) -> int:
    lo, hi = args.lo, args.hi
    if args.kind == "primes":
        for p in sieve_primes(hi):
            if p >= lo:
                print(int(p))
        return 0
    if args.kind == "mobius":
        table = sieve_mobius_segment(lo, hi)
    elif args.kind == "kfree":
        table = sieve_kfree_segment(lo, hi, args.k)
    else:  # spf
        spf = build_spf(hi)
        for n in range(lo, hi + 1):
            print(f"{n},{int(spf.spf[n])}")
        return 0
    if args.out:
        table.to_csv(args.out)
        print(f"wrote {args.out}")
    else:
        for i, v in enumerate(table.values):
            print(f"{lo + i},{int(v)}")
    return 0


def cmd_sum(args) -> int:
    f, _, _ = _rule_from_args(args)
    schedule = checkpoint_schedule(args.limit, ratio=args.schedule)
    series = direct_summatory(f, args.limit, schedule=schedule, threads=args.threads)
    if args.out:
        series.to_csv(args.out)
        print(f"wrote {args.out}")
    x, m = series.final
    print(f"M_{f.label}({x}) = {m} (max |M| = {int(series.abs_max[-1])})")
    return 0


def cmd_mertens(args) -> int:
    m = mertens(args.limit)
    print(f"M({args.limit}) = {m}")
    if args.check:
        r = mertens_recursive(args.limit)
        agree = "agree" if r == m else "DISAGREE"
        print(f"recursive path: {r} ({agree})")
        if r != m:
            return 1
    return 0


def cmd_verify_budget(args) -> int:
    chi = build_real_character(args.modulus)
    plan = _load_plan(args.plan, args.modulus) or ModificationPlan(character=chi)
    g = modified_character(plan)
    budget = DeviationBudget(big_c=args.C, small_c=args.c, k=args.k, x0=args.x0)
    schedule = checkpoint_schedule(args.limit, ratio=args.schedule)
    report = verify_deviation_budget(g, chi, budget, args.limit, schedule)
    if args.out:
        report.to_csv(args.out)
        print(f"wrote {args.out}")
    if report.passed:
        print(f"PASS: S(x) within budget on [{args.x0}, {args.limit}]")
    else:
        x, s, b = report.first_violation
        print(f"FAIL: S({x}) = {s} > budget {b:.6g}")
    return 0


def cmd_distance(args) -> int:
    chi = build_real_character(args.modulus)
    plan = _load_plan(args.plan, args.modulus) or ModificationPlan(character=chi)
    g = modified_character(plan)
    ref = completed_character(chi) if args.against == "completed" else character_rule(chi)
    d = pretentious_distance(g, ref, args.limit)
    print(f"D({g.label}, {ref.label}; {args.limit}) = {d:.6g}  (D^2 = {d * d:.6g})")
    return 0


def cmd_fit(args) -> int:
    rows = Path(args.series).read_text().strip().splitlines()
    header = rows[0].split(",")
    ix, im, ia = header.index("x"), header.index("M"), header.index("abs_max")
    cps, running = [], []
    for line in rows[1:]:
        parts = line.split(",")
        cps.append((int(parts[ix]), int(parts[im])))
        running.append((int(parts[ix]), int(parts[ia])))
    series = PartialSumSeries(label=Path(args.series).stem, checkpoints=cps,
                              running_abs_max=running)
    fit = fit_exponent(series, x_min=args.x_min)
    print(json.dumps({
        "slope": round(fit.slope, 6), "intercept": round(fit.intercept, 6),
        "residual": round(fit.residual, 6), "x_min": fit.x_min, "points": fit.points,
    }, sort_keys=True))
    return 0


def cmd_figure1(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, svg_path = out / "figure1.csv", out / "figure1.svg"
    schedule = checkpoint_schedule(args.limit, ratio=args.schedule)
    series = figure1(args.limit, csv_path, svg_path, modulus=args.modulus,
                     schedule=schedule, threads=args.threads)
    ratio, at = envelope_ratio(series, power_envelope(0.25),
                               x_min=min(10**3, args.limit))
    print(f"wrote {csv_path} and {svg_path}")
    print(f"max |M(x)| / x^0.25 = {ratio:.6g} at x = {at} (x >= {min(10**3, args.limit)})")
    return 0


def cmd_compare(args) -> int:
    f, g, chi = _rule_from_args(args)
    x = args.limit
    if args.split == "theorem2":
        split = optimal_split(x, args.k)
    elif args.split == "sqrt":
        split = sqrt_split(x)
    else:
        try:
            u, v = (float(t) for t in args.split.split(","))
        except ValueError:
            raise ConfigError(f"--split must be theorem2, sqrt, or U,V; got {args.split!r}")
        split = explicit_split(x, u, v)
    report = compare_methods(f, args.k, x, split, threads=args.threads)
    print(f"direct    M_{f.label}({x}) = {report.direct_value}"
          f"  [{report.direct_seconds:.3f} s]")
    print(f"hyperbola M_{f.label}({x}) = {report.hyperbola_value}"
          f"  [{report.hyperbola_seconds:.3f} s]"
          f"  (U = {split.u_floor}, V = {split.v_floor})")
    print("values agree: exact")
    return 0


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    summary = run_experiment(cfg, args.out, threads=args.threads)
    print(f"wrote bundle to {args.out}")
    print(f"final M = {summary['final']['M']} at x = {summary['final']['x']}")
    for env in summary["envelopes"]:
        print(f"envelope {env['curve']}: max ratio {env['max_ratio']:.6g} at x = {env['arg_max']}")
    if "budget" in summary:
        print(f"budget: {'PASS' if summary['budget']['passed'] else 'FAIL'}")
    if "slope" in summary["fit"]:
        print(f"fit slope: {summary['fit']['slope']:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfreesums",
        description="Exact partial sums of multiplicative functions on k-free integers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="dump sieved tables (CSV columns n,value)")
    p.add_argument("--kind", choices=["primes", "mobius", "kfree", "spf"], default="mobius")
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("sum", help="stream exact partial sums of a rule")
    _add_common(p, k_default=0)
    p.add_argument("--out", type=str, default=None, help="series CSV path")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("mertens", help="exact Mertens value")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check the recursive path")
    p.set_defaults(func=cmd_mertens)

    p = sub.add_parser("verify-budget", help="check the prime-deviation budget")
    _add_common(p, k_default=2)
    p.add_argument("--C", type=float, default=2.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--x0", type=int, default=10)
    p.add_argument("--out", type=str, default=None, help="budget CSV path")
    p.set_defaults(func=cmd_verify_budget)

    p = sub.add_parser("distance", help="pretentious distance of a plan's g from chi")
    _add_common(p)
    p.add_argument("--against", choices=["character", "completed"], default="character")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("fit", help="fit the growth exponent of a series CSV")
    p.add_argument("--series", type=str, required=True)
    p.add_argument("--x-min", type=int, default=10**3)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("figure1", help="partial sums vs +-x^(1/4): CSV + SVG")
    _add_common(p)
    p.add_argument("--out", type=str, required=True, help="output directory")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("compare", help="hyperbola vs direct summation, timed")
    _add_common(p, k_default=2)
    p.add_argument("--split", type=str, default="theorem2",
                   help='"theorem2", "sqrt", or "U,V"')
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="config-driven report bundle")
    p.add_argument("--config", type=str, required=True)
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) == 0:
        args.k = None
    try:
        return args.func(args)
    except KfreesumsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
