"""War probability, welfare and payoffs at the chosen split."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optimizer import Regime, Solution, solve
from .payoff import gov_payoff_any, reb_payoff
from .stage2 import fight_thresholds


@dataclass(frozen=True)
class OutcomeReport:
    prob_war: float
    welfare: float
    gov_payoff: float
    reb_payoff: float
    regime: Regime
    beta_star: float


def war_probability(params, beta: float) -> float:
    """Uniform measure of the shocks at which either side fights.

    Worked out from the fight thresholds alone, independently of the payoff
    module's branch bookkeeping.
    """
    lo, hi = params.a_lo, params.a_hi
    th = fight_thresholds(params, beta)
    g_end = min(max(th.t_g, lo), hi)
    r_start = min(max(th.t_r, g_end), hi)
    p = ((g_end - lo) + (hi - r_start)) / (hi - lo)
    if not -1e-12 < p < 1.0 + 1e-12:
        raise AssertionError(f"war probability {p!r} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def welfare(params, beta: float) -> float:
    """Expected surviving resources, ``1 - P(war) (1 - alpha)``."""
    return 1.0 - war_probability(params, beta) * (1.0 - params.alpha)


def outcome_report(params, solution: Solution | None = None) -> OutcomeReport:
    if solution is None:
        solution = solve(params)
    beta = solution.beta_star
    if solution.regime is Regime.GUARANTEE_PEACE:
        return OutcomeReport(0.0, 1.0, beta, 1.0 - beta, solution.regime, beta)
    p = war_probability(params, beta)
    gov = gov_payoff_any(params, beta).total
    reb = reb_payoff(params, beta).total
    w = 1.0 - p * (1.0 - params.alpha)
    if not math.isclose(gov + reb, w, abs_tol=1e-10):
        raise AssertionError(f"payoffs {gov + reb!r} disagree with welfare {w!r}")
    return OutcomeReport(p, w, gov, reb, solution.regime, beta)
