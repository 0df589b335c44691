"""Conflict bargaining under bounded uncertainty.

A government proposes to keep a share ``beta`` of a unit resource; after a
uniform shock to rebel arms is realised, each side accepts or fights. This
package computes the fight thresholds, the peace-guaranteeing splits, the
government's optimal split and the resulting war probability and welfare,
and checks all of it against a Monte Carlo simulation of the game.
"""

from .mc import SimConfig, SimEstimate, ValidationReport, simulate, validate_analytics
from .model import GameParams, ParamError, SymmetricParams, WinProb, validate, win_prob
from .optimizer import (JumpPoint, Regime, Solution, SwitchCondition, detect_jump,
                        foc_residual, foc_residual_alt, solve, switch_condition)
from .outcomes import OutcomeReport, outcome_report, war_probability, welfare
from .payoff import (Branch, BoundsOutOfSupport, PayoffBreakdown, RegimeMismatch,
                     expected_win_prob, gov_payoff, gov_payoff_high, partial_win_mass,
                     reb_payoff)
from .stage2 import (UNBOUNDED, Decision, FightThresholds, PeaceInterval, ThresholdSet,
                     a_crit, best_response, fight_thresholds, peace_interval, threshold_set)
from .sweep import SweepRow, SweepSpec, emit_csv, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BoundsOutOfSupport", "Branch", "Decision", "FightThresholds", "GameParams", "JumpPoint",
    "OutcomeReport", "ParamError", "PayoffBreakdown", "PeaceInterval", "Regime",
    "RegimeMismatch", "SimConfig", "SimEstimate", "Solution", "SwitchCondition", "SweepRow",
    "SweepSpec", "SymmetricParams", "ThresholdSet", "UNBOUNDED", "ValidationReport", "WinProb",
    "a_crit", "best_response", "detect_jump", "emit_csv", "expected_win_prob",
    "fight_thresholds", "foc_residual", "foc_residual_alt", "gov_payoff", "gov_payoff_high",
    "outcome_report", "partial_win_mass", "peace_interval", "reb_payoff", "run_sweep",
    "simulate", "solve", "switch_condition", "threshold_set", "validate",
    "validate_analytics", "war_probability", "welfare", "win_prob",
]
