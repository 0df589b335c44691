"""Command-line front end: ``peacegame <subcommand> [options]``.

Parameters come from ``--config FILE`` (key=value lines) and/or flags of the
same names; flags win. Exit status is 0 on success, 2 on invalid input and 1
when the ``verify`` battery flags a discrepancy.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .mc import SimConfig, random_battery, simulate, validate_analytics
from .model import (GAME_KEYS, ParamError, SymmetricParams, params_from_mapping, read_config,
                    validate)
from .optimizer import solve
from .outcomes import outcome_report, war_probability
from .payoff import Branch, payoff_curves
from .stage2 import UNBOUNDED, a_crit, fight_thresholds, peace_interval, threshold_set
from .sweep import SWEEPABLE, SweepSpec, csv_text, run_sweep, write_annotations


class UsageError(ValueError):
    """Bad input that is not a parameter-validation failure."""


def _f(v: float, digits: int = 6) -> str:
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{digits}f}"


def _kv(out, pairs):
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        out.write(f"{k.ljust(width)} = {v}\n")


def _raw_values(args) -> dict:
    values = read_config(args.config) if args.config else {}
    for key in GAME_KEYS:
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    return values


def _params(args):
    try:
        return params_from_mapping(_raw_values(args))
    except ParamError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _alpha_x(args):
    values = _raw_values(args)
    if "alpha" not in values:
        raise UsageError("alpha is required")
    if "x" in values:
        x = values["x"]
    else:
        x = values.get("y_g", 0.0) - values.get("y_r", 0.0)
    # reuse the full validator; the support width is irrelevant here
    validate(SymmetricParams(x, 0.0, values["alpha"], 1.0))
    return values["alpha"], x


def cmd_thresholds(args, out):
    params = _params(args)
    ts = threshold_set(params)
    pi = peace_interval(params)
    pairs = [
        ("beta_g_minus", _f(ts.beta_g_minus)),
        ("beta_g_plus", _f(ts.beta_g_plus)),
        ("beta_r_minus", _f(ts.beta_r_minus)),
        ("beta_r_plus", _f(ts.beta_r_plus)),
        ("peace_exists", "true" if pi.exists else "false"),
    ]
    if pi.exists:
        pairs += [("peace_lo", _f(pi.lo)), ("peace_hi", _f(pi.hi))]
    th = None
    if args.beta is not None:
        th = fight_thresholds(params, args.beta)
        pairs += [("beta", _f(args.beta)), ("t_g", _f(th.t_g)), ("t_r", _f(th.t_r))]
    _kv(out, pairs)
    if args.csv:
        row = [ts.beta_g_minus, ts.beta_g_plus, ts.beta_r_minus, ts.beta_r_plus]
        header = ["beta_g_minus", "beta_g_plus", "beta_r_minus", "beta_r_plus"]
        if th is not None:
            header += ["beta", "t_g", "t_r"]
            row += [args.beta, th.t_g, th.t_r]
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerow([f"{v:.12g}" for v in row])
    return 0


def cmd_acrit(args, out):
    alpha, x = _alpha_x(args)
    value = a_crit(alpha, x)
    out.write("a_crit=UNBOUNDED\n" if value is UNBOUNDED else f"a_crit={_f(value)}\n")
    return 0


def cmd_payoff(args, out):
    params = _params(args)
    if not 0.0 <= args.beta_lo < args.beta_hi <= 1.0:
        raise UsageError("need 0 <= beta-lo < beta-hi <= 1")
    if args.points < 2:
        raise UsageError("points must be at least 2")
    beta = np.linspace(args.beta_lo, args.beta_hi, args.points)
    codes, gov, reb, _ = payoff_curves(params, beta)
    # prob_war straight from the thresholds, not from the branch bookkeeping
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("beta", "branch", "gov_total", "reb_total", "prob_war", "welfare"))
    for b, c, g, r in zip(beta, codes, gov, reb):
        p = war_probability(params, float(b))
        w.writerow((f"{b:.12g}", Branch(int(c)).label, f"{g:.12g}", f"{r:.12g}",
                    f"{p:.12g}", f"{1.0 - p * (1.0 - params.alpha):.12g}"))
    return 0


def grid_oracle(params, points: int = 100_001):
    """Brute-force argmax of the government payoff over ``[0, 1]``."""
    beta = np.linspace(0.0, 1.0, points)
    _, gov, _, _ = payoff_curves(params, beta)
    i = int(np.argmax(gov))
    return float(beta[i]), float(gov[i]), 1.0 / (points - 1)


def cmd_solve(args, out):
    params = _params(args)
    sol = solve(params)
    rep = outcome_report(params, sol)
    _kv(out, [
        ("beta_star", _f(sol.beta_star)),
        ("regime", sol.regime.value),
        ("prob_war", _f(rep.prob_war)),
        ("welfare", _f(rep.welfare)),
        ("gov_payoff", _f(rep.gov_payoff)),
        ("reb_payoff", _f(rep.reb_payoff)),
        ("unique", "true" if sol.is_unique else "false"),
    ])
    out.write("candidates:\n")
    out.write(f"  {'beta':>10}  {'gov_payoff':>10}\n")
    for b, v in sol.candidates:
        mark = "  *" if b == sol.beta_star else ""
        out.write(f"  {_f(b):>10}  {_f(v):>10}{mark}\n")
    if args.oracle:
        b, g, step = grid_oracle(params)
        _kv(out, [
            ("oracle_beta", _f(b)),
            ("oracle_payoff", _f(g)),
            ("oracle_beta_diff", f"{abs(b - sol.beta_star):.3e}"),
            ("oracle_grid_steps", f"{abs(b - sol.beta_star) / step:.2f}"),
        ])
    return 0


def cmd_sweep(args, out):
    params = _params(args)
    if not isinstance(params, SymmetricParams):
        raise UsageError("sweep needs a symmetric support (a_half)")
    lo = args.lo if args.lo is not None else 1e-4
    try:
        spec = SweepSpec(params, args.param, lo, args.hi, args.count, args.spacing,
                         args.truncate_acrit)
        result = run_sweep(spec, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = csv_text(result.rows, args.param)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        write_annotations(result, args.out + ".annotations.txt")
    else:
        out.write(text)
    return 0


def cmd_simulate(args, out):
    params = _params(args)
    try:
        config = SimConfig(params, args.beta, args.draws, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    est = simulate(config, workers=args.workers)
    _kv(out, [
        ("draws", str(est.draws)),
        ("gov_mean", _f(est.gov_mean)), ("gov_se", _f(est.gov_se)),
        ("reb_mean", _f(est.reb_mean)), ("reb_se", _f(est.reb_se)),
        ("war_freq", _f(est.war_freq)), ("war_se", _f(est.war_se)),
    ])
    return 0


def cmd_verify(args, out):
    if args.draws < 1 or args.cases < 1:
        raise UsageError("draws and cases must be positive")
    failed = 0
    for i, (params, beta) in enumerate(random_battery(args.cases, args.seed)):
        rep = validate_analytics(params, beta, args.draws, args.seed + i)
        worst = max(rep.z_scores.values())
        status = "ok" if rep.ok else "FLAG " + ",".join(rep.flags)
        if not rep.ok or args.verbose:
            out.write(f"case {i}: alpha={params.alpha:.4f} x={params.x:.4f} "
                      f"a_half={params.a_half:.4f} beta={beta:.4f} max_z={worst:.2f} {status}\n")
        failed += not rep.ok
    out.write(f"verify: {args.cases - failed}/{args.cases} cases within 4 s.e.\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("game parameters")
    g.add_argument("--config", metavar="FILE", help="key=value parameter file")
    g.add_argument("--y_g", type=float, help="government arms")
    g.add_argument("--y_r", type=float, help="rebel arms")
    g.add_argument("--x", type=float, help="arms gap y_g - y_r (sets y_r = 0)")
    g.add_argument("--alpha", type=float, help="share of resources surviving a war")
    g.add_argument("--a_lo", type=float, help="lower end of the shock support")
    g.add_argument("--a_hi", type=float, help="upper end of the shock support")
    g.add_argument("--a_half", type=float, help="half-width of a symmetric support")

    parser = argparse.ArgumentParser(prog="peacegame",
                                     description="Conflict bargaining under bounded uncertainty.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("thresholds", parents=[common], help="transfer bounds and fight thresholds")
    p.add_argument("--beta", type=float, help="also print fight thresholds at this split")
    p.add_argument("--csv", action="store_true", help="append a CSV header and row")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("acrit", parents=[common], help="critical half-width of the support")
    p.set_defaults(func=cmd_acrit)

    p = sub.add_parser("payoff", parents=[common], help="payoffs on a grid of splits (CSV)")
    p.add_argument("--beta-lo", type=float, default=0.0, help="first split on the grid")
    p.add_argument("--beta-hi", type=float, default=1.0, help="last split on the grid")
    p.add_argument("--points", type=int, default=101, help="number of grid points")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("solve", parents=[common], help="optimal split and outcomes")
    p.add_argument("--oracle", action="store_true", help="cross-check with a grid search")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", parents=[common], help="solve along a parameter grid (CSV)")
    p.add_argument("--param", choices=SWEEPABLE, default="a_half", help="parameter to vary")
    p.add_argument("--lo", type=float, help="grid start (default 1e-4)")
    p.add_argument("--hi", type=float, help="grid end (default a_crit for a_half)")
    p.add_argument("--count", type=int, default=400, help="number of grid points")
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.add_argument("--out", metavar="FILE",
                   help="write CSV here and annotations to FILE.annotations.txt")
    p.add_argument("--truncate-acrit", action=argparse.BooleanOptionalAction, default=True,
                   help="cap an a_half grid at a_crit")
    p.add_argument("--workers", type=int, default=1, help="parallel worker count")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate at one split")
    p.add_argument("--beta", type=float, required=True, help="government share")
    p.add_argument("--draws", type=int, default=1_000_000, help="number of simulated shocks")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--workers", type=int, default=1, help="parallel worker count")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="analytic vs Monte Carlo battery")
    p.add_argument("--draws", type=int, default=1_000_000, help="simulated shocks per case")
    p.add_argument("--seed", type=int, default=0, help="seed for the battery and the draws")
    p.add_argument("--cases", type=int, default=200, help="number of random cases")
    p.add_argument("--verbose", action="store_true", help="print every case, not just flags")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParamError as exc:
        for code, msg in exc.errors:
            sys.stderr.write(f"error: {code}: {msg}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: InvalidInput: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
