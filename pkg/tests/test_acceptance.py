"""The ten acceptance criteria, each at its stated tolerance.

Each test records a one-line summary; ``conftest.py`` prints PASS/FAIL per
criterion at the end of the run. Running this file directly with ``-s``
also prints the lines as the tests finish.
"""

import math

import numpy as np
import pytest

import oracles
from peacegame.mc import SimConfig, random_battery, simulate, validate_analytics
from peacegame.model import GameParams, SymmetricParams
from peacegame.optimizer import (detect_jump, foc_residual, foc_residual_alt, solve,
                                 switch_condition)
from peacegame.payoff import Branch, branch_terms, gov_payoff, gov_payoff_any
from peacegame.stage2 import UNBOUNDED, a_crit, fight_thresholds, threshold_set
from peacegame.sweep import SweepSpec, run_sweep


def sym(alpha, x, a):
    return SymmetricParams.from_x(alpha, x, a)


@pytest.fixture
def report(record_property):
    def _report(ok, detail):
        record_property("acceptance", detail)
        print(f"{'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return _report


def low_regime_draws(n, seed, frac_hi=1.0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        alpha, x = rng.uniform(0.1, 0.98), rng.uniform(-3, 3)
        crit = a_crit(alpha, x)
        cap = 5.0 if crit is UNBOUNDED else crit
        out.append(sym(alpha, x, cap * rng.uniform(0.005, frac_hi)))
    return out


def test_criterion_01_acrit_closed_form(report):
    worst = abs(a_crit(0.7, 0.0) - oracles.acrit_bisect(0.7, 0.0))
    value = a_crit(0.7, 0.0)
    base_ok = abs(value - math.log(2.5)) < 1e-12 and abs(value - 0.916291) < 5e-7
    table = {}
    for alpha in (0.55, 0.7, 0.9):
        for x in (0.0, 1.0, 2.5):
            table[alpha, x] = a_crit(alpha, x)
            worst = max(worst, abs(table[alpha, x] - oracles.acrit_bisect(alpha, x)))
    dec_alpha = all(table[0.55, x] > table[0.7, x] > table[0.9, x] for x in (0.0, 1.0, 2.5))
    inc_x = all(table[a, 0.0] < table[a, 1.0] < table[a, 2.5] for a in (0.55, 0.7, 0.9))
    mirror = all(a_crit(a, -x) == table[a, x] for a, x in table)
    ok = base_ok and worst < 1e-8 and dec_alpha and inc_x and mirror
    report(ok, f"a_crit(0.7,0)={a_crit(0.7, 0.0):.6f}; max |closed-bisection|={worst:.1e}; "
               f"decreasing in alpha={dec_alpha}; increasing in |x|={inc_x}")


def _invert(fn, target, lo, hi):
    # fight thresholds decrease in beta, so bisect on fn(beta) - target
    return oracles.bisect(lambda b: fn(b) - target, lo, hi, tol=1e-15)


def test_criterion_02_threshold_inversion(report):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        alpha, x = rng.uniform(0.05, 0.99), rng.uniform(-3, 3)
        lo = rng.uniform(-3, 2)
        hi = lo + rng.uniform(0.01, 3)
        p = GameParams(x, 0.0, alpha, lo, hi)
        t_g = lambda b: fight_thresholds(p, b).t_g
        t_r = lambda b: fight_thresholds(p, b).t_r
        ref = (_invert(t_g, hi, 1e-300, alpha), _invert(t_g, lo, 1e-300, alpha),
               _invert(t_r, hi, 1 - alpha, 1.0), _invert(t_r, lo, 1 - alpha, 1.0))
        worst = max(worst, max(abs(a - b) for a, b in zip(threshold_set(p).as_tuple(), ref)))
    report(worst < 1e-8, f"1000 draws, max |closed form - bisection| = {worst:.1e}")


def test_criterion_03_piecewise_continuity(report):
    worst = 0.0
    for p in low_regime_draws(200, 3):
        ts = threshold_set(p)
        edges = [(ts.beta_g_minus, Branch.ALWAYS_WAR_LOW, Branch.GOV_MAY_FIGHT),
                 (ts.beta_g_plus, Branch.GOV_MAY_FIGHT, Branch.GUARANTEED_PEACE),
                 (ts.beta_r_minus, Branch.GUARANTEED_PEACE, Branch.REB_MAY_FIGHT),
                 (ts.beta_r_plus, Branch.REB_MAY_FIGHT, Branch.ALWAYS_WAR_HIGH)]
        for b, left, right in edges:
            lt, rt = branch_terms(p, b, left), branch_terms(p, b, right)
            gap = abs((lt["gov_war"] + lt["gov_peace"]) - (rt["gov_war"] + rt["gov_peace"]))
            # and the public API agrees with both limits at the breakpoint itself
            gap = max(gap, abs(gov_payoff(p, b).total - (lt["gov_war"] + lt["gov_peace"])))
            worst = max(worst, float(gap))
    report(worst < 1e-9, f"200 draws x 4 breakpoints, max left/right gap = {worst:.1e}")


def test_criterion_04_optimizer_vs_grid(report):
    grid = np.linspace(0.0, 1.0, 100_000)
    step = grid[1] - grid[0]
    worst_steps, located = 0.0, True
    for p in low_regime_draws(300, 4):
        sol = solve(p)
        vals = oracles.gov_payoff_grid(p.alpha, p.x, p.a_lo, p.a_hi, grid)
        worst_steps = max(worst_steps, abs(grid[np.argmax(vals)] - sol.beta_star) / step)
        ts = threshold_set(p)
        located &= ts.beta_r_minus <= sol.beta_star < ts.beta_r_plus
        located &= sol.beta_star >= ts.beta_g_plus
    ok = worst_steps <= 2 and located
    report(ok, f"300 draws, max |beta* - grid argmax| = {worst_steps:.2f} grid steps; "
               f"beta* in [r-, r+) and >= g+: {located}")


def _stretches(rows, regime):
    out, cur = [], []
    for r in rows:
        if r.regime == regime:
            cur.append(r)
        elif cur:
            out.append(cur)
            cur = []
    if cur:
        out.append(cur)
    return out


def _sweep(alpha, x, hi=None, count=400):
    return run_sweep(SweepSpec(sym(alpha, x, 1.0), hi=hi, count=count))


def test_criterion_05_non_monotonicity(report):
    notes, ok = [], True
    for alpha in (0.5, 0.6, 0.7, 0.8, 0.9):
        res = _sweep(alpha, 1.0, hi=5.0 if alpha <= 0.5 else None)
        rows = res.rows
        regimes = [r.regime for r in rows]
        n_peace = regimes.index("RiskWar") if "RiskWar" in regimes else len(rows)
        peace, risk = rows[:n_peace], rows[n_peace:]
        ok &= all(r.regime == "GuaranteePeace" for r in peace)
        ok &= all(r.regime == "RiskWar" for r in risk)
        ok &= bool(np.all(np.diff([r.beta_star for r in peace]) < 0))
        ok &= bool(np.all(np.diff([r.beta_star for r in risk]) >= -1e-9))
        flagged = [switch_condition(sym(alpha, 1.0, r.value)).flag for r in rows]
        # wherever the boundary slope is positive the government must risk war
        ok &= all(r.regime == "RiskWar" for r, f in zip(rows, flagged) if f)
        if alpha == 0.5:
            ok &= not risk and all(r.beta_star == r.beta_r_minus for r in rows)
        else:
            ok &= bool(risk) and any(flagged)
        notes.append(f"x=1 a={alpha}: {len(peace)} peace/{len(risk)} risk;")
    for alpha in (0.5, 0.55, 0.7, 0.9):
        res = _sweep(alpha, -1.0, hi=5.0 if alpha <= 0.5 else None, count=200)
        no_risk = all(r.regime == "GuaranteePeace" for r in res.rows)
        ok &= no_risk
        notes.append(f"x=-1 a={alpha}:{'no RiskWar' if no_risk else 'RiskWar!'}")
    report(ok, " ".join(notes))


def test_criterion_06_jump_detection(report):
    base = sym(0.45, 2.5, 1.0)
    grid = np.linspace(1e-4, 15.0, 400)
    solutions = [solve(base.with_half_width(a)) for a in grid]
    jump = detect_jump(base, grid, solutions=solutions)
    found = []
    start = 0
    while jump is not None:
        found.append(jump)
        start = int(np.searchsorted(grid, jump.bracket[1]))
        if start >= len(grid) - 1:
            break
        jump = detect_jump(base, grid[start:], solutions=solutions[start:])
    ok = len(found) == 1 and found[0].gap < 1e-8
    detail = f"alpha=0.45, x=2.5: {len(found)} jump(s)"
    if found:
        j = found[0]
        p = base.with_half_width(j.a_jump)
        r_minus = oracles.reb_bound(p.alpha, p.x, p.a_hi)
        beta = np.linspace(r_minus + 0.05, 1 - 1e-9, 200_001)
        risky = oracles.gov_payoff_grid(p.alpha, p.x, p.a_lo, p.a_hi, beta).max()
        ok &= abs(risky - r_minus) < 1e-8
        detail += (f" at a={j.a_jump:.8f}, tie gap={j.gap:.1e}, beta* {j.beta_risk:.4f} -> "
                   f"{j.beta_peace:.4f}, oracle tie gap={abs(risky - r_minus):.1e}")
    report(ok, detail)


def test_criterion_07_outcome_monotonicity(report):
    cases = [(0.6, 1.0, None), (0.7, 1.0, None), (0.8, 1.0, None), (0.9, 1.0, None),
             (0.4, 4.0, 15.0), (0.45, 2.5, 15.0), (0.7, 2.5, None)]
    ok, n_risk, n_peace = True, 0, 0
    for alpha, x, hi in cases:
        rows = _sweep(alpha, x, hi=hi, count=300).rows
        for stretch in _stretches(rows, "RiskWar"):
            n_risk += len(stretch)
            ok &= bool(np.all(np.diff([r.prob_war for r in stretch]) >= -1e-9))
            ok &= bool(np.all(np.diff([r.welfare for r in stretch]) <= 1e-9))
        for r in rows:
            if r.regime == "GuaranteePeace":
                n_peace += 1
                ok &= r.welfare == 1.0 and r.prob_war == 0.0
    ok &= n_risk > 0 and n_peace > 0
    report(ok, f"{len(cases)} sweeps: {n_risk} RiskWar rows monotone, "
               f"{n_peace} GuaranteePeace rows with welfare exactly 1")


def test_criterion_08_monte_carlo_battery(report):
    flagged, worst = [], 0.0
    for i, (p, beta) in enumerate(random_battery(200, 8)):
        rep = validate_analytics(p, beta, draws=1_000_000, seed=1000 + i)
        worst = max(worst, max(rep.z_scores.values()))
        if not rep.ok:
            flagged.append(i)
    est = simulate(SimConfig(sym(0.7, 0.0, 1.0), 0.6, 10_000_000, 8))
    z_ref = abs(est.war_freq - 0.356161) / est.war_se
    ok = not flagged and z_ref < 3
    report(ok, f"200 pairs x 1e6 draws: {len(flagged)} flagged, max z={worst:.2f}; "
               f"reference war freq {est.war_freq:.6f} (z={z_ref:.2f} vs 0.356161)")


def test_criterion_09_foc_forms(report):
    rng = np.random.default_rng(9)
    worst = 0.0
    for p in low_regime_draws(100, 9):
        ts = threshold_set(p)
        lo = max(ts.beta_r_minus, 1 - p.alpha + 1e-10)
        hi = min(ts.beta_r_plus, 1 - 1e-10)
        for b in rng.uniform(lo, hi, 100):
            worst = max(worst, abs(foc_residual(p, b).value - foc_residual_alt(p, b).value))
    report(worst < 1e-10, f"100 draws x 100 beta, max |difference| = {worst:.1e}")


def test_criterion_10_finite_difference(report):
    rng = np.random.default_rng(10)
    h = 1e-6
    worst_ratio, pos_ok, neg_ok = 0.0, True, True
    for p in low_regime_draws(100, 10):
        ts = threshold_set(p)
        width = ts.beta_r_plus - ts.beta_r_minus
        for b in rng.uniform(ts.beta_r_minus + 0.02 * width, ts.beta_r_plus - 0.02 * width, 20):
            fd = (gov_payoff(p, b + h).total - gov_payoff(p, b - h).total) / (2 * h)
            analytic = foc_residual(p, b).value / (2 * p.a_hi)
            tol = max(1e-6, 1e-4 * abs(analytic))
            worst_ratio = max(worst_ratio, abs(fd - analytic) / tol)
        for b in np.linspace(ts.beta_g_minus, ts.beta_g_plus, 11)[1:]:
            pos_ok &= (gov_payoff(p, b + h).total - gov_payoff(p, b - h).total) > 0
        b = ts.beta_r_plus
        neg_ok &= (gov_payoff_any(p, min(b + h, 1.0)).total - gov_payoff(p, b - h).total) < 0
    ok = worst_ratio <= 1 and pos_ok and neg_ok
    report(ok, f"max |fd - residual/(2a)| / tol = {worst_ratio:.2f}; positive on (g-, g+]: "
               f"{pos_ok}; negative at r+: {neg_ok}")
