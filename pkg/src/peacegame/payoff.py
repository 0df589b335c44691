"""Expected first-stage payoffs under a uniform shock.

For a fixed split the shock support splits into at most three pieces: a low
piece where the government fights, a high piece where the rebels fight, and
a peaceful middle. Each branch of the payoff is

    (alpha * mass(war pieces) + beta * len(peace piece)) / width

for the government, where ``mass(lo, hi)`` integrates the government's win
probability over ``[lo, hi]``. The rebels get the complementary
``alpha * (len(war pieces) - mass(war pieces))`` and ``1 - beta`` in peace,
so the two payoffs always sum to ``1 - prob_war * (1 - alpha)``.

Which pieces are present is decided by comparing ``beta`` with the threshold
set:

==================  =============================  ==========================
branch              low uncertainty                high uncertainty
==================  =============================  ==========================
AlwaysWarLow        ``[0, g-)``                    ``[0, g-)``
GovMayFight         ``[g-, g+)``                   ``[g-, r-)``
GuaranteedPeace     ``[g+, r-]``                   --
BothMayFight        --                             ``[r-, g+]``
RebMayFight         ``(r-, r+]``                   ``(g+, r+]``
AlwaysWarHigh       ``(r+, 1]``                    ``(r+, 1]``
==================  =============================  ==========================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .stage2 import gov_threshold_array, reb_threshold_array, threshold_set


class RegimeMismatch(ValueError):
    pass


class BoundsOutOfSupport(ValueError):
    pass


class Branch(enum.IntEnum):
    ALWAYS_WAR_LOW = 0
    GOV_MAY_FIGHT = 1
    GUARANTEED_PEACE = 2
    REB_MAY_FIGHT = 3
    ALWAYS_WAR_HIGH = 4
    BOTH_MAY_FIGHT = 5

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Branch.ALWAYS_WAR_LOW: "AlwaysWarLow",
    Branch.GOV_MAY_FIGHT: "GovMayFight",
    Branch.GUARANTEED_PEACE: "GuaranteedPeace",
    Branch.REB_MAY_FIGHT: "RebMayFight",
    Branch.ALWAYS_WAR_HIGH: "AlwaysWarHigh",
    Branch.BOTH_MAY_FIGHT: "BothMayFight",
}


@dataclass(frozen=True)
class PayoffBreakdown:
    total: float
    branch: Branch
    war_component: float
    peace_component: float
    prob_war: float


@dataclass(frozen=True)
class ExpectedWinProb:
    p_tilde_g: float


def _softplus(z):
    return np.logaddexp(0.0, z)


def _mass(x, lo, hi):
    # antiderivative of 1/(1+exp(e-x)) is x - softplus(x-e)
    return _softplus(x - lo) - _softplus(x - hi)


def partial_win_mass(params, lo: float, hi: float) -> float:
    """Integral of the government's win probability over ``[lo, hi]``."""
    tol = 1e-12 * max(1.0, abs(params.a_lo), abs(params.a_hi))
    if lo > hi:
        raise BoundsOutOfSupport(f"lower bound {lo!r} exceeds upper bound {hi!r}")
    if lo < params.a_lo - tol or hi > params.a_hi + tol:
        raise BoundsOutOfSupport(
            f"[{lo!r}, {hi!r}] is not inside the support [{params.a_lo!r}, {params.a_hi!r}]")
    if lo == hi:
        return 0.0
    return float(_mass(params.x, lo, hi))


def expected_win_prob(params) -> ExpectedWinProb:
    """Government's win probability averaged over the whole support."""
    return ExpectedWinProb(partial_win_mass(params, params.a_lo, params.a_hi) / params.width)


def has_peace_interval(params) -> bool:
    ts = threshold_set(params)
    return ts.beta_g_plus <= ts.beta_r_minus


def branch_of(params, beta):
    """Branch code(s) for ``beta``; scalar in, :class:`Branch` out."""
    ts = threshold_set(params)
    b = np.asarray(beta, dtype=float)
    if ts.beta_g_plus <= ts.beta_r_minus:
        codes = np.select(
            [b < ts.beta_g_minus, b < ts.beta_g_plus, b <= ts.beta_r_minus, b <= ts.beta_r_plus],
            [Branch.ALWAYS_WAR_LOW, Branch.GOV_MAY_FIGHT, Branch.GUARANTEED_PEACE, Branch.REB_MAY_FIGHT],
            Branch.ALWAYS_WAR_HIGH)
    else:
        codes = np.select(
            [b < ts.beta_g_minus, b < ts.beta_r_minus, b <= ts.beta_g_plus, b <= ts.beta_r_plus],
            [Branch.ALWAYS_WAR_LOW, Branch.GOV_MAY_FIGHT, Branch.BOTH_MAY_FIGHT, Branch.REB_MAY_FIGHT],
            Branch.ALWAYS_WAR_HIGH)
    if np.ndim(beta) == 0:
        return Branch(int(codes))
    return codes.astype(int)


def branch_terms(params, beta, branch):
    """Evaluate the named branch formula at ``beta`` (vectorised).

    The formula is used as written, even outside the branch's own interval,
    which is what the continuity checks at the breakpoints need. Returns a dict
    of arrays: ``gov_war``, ``gov_peace``, ``reb_war``, ``reb_peace``,
    ``prob_war``.
    """
    alpha, x = params.alpha, params.x
    lo, hi, width = params.a_lo, params.a_hi, params.width
    beta = np.asarray(beta, dtype=float)
    branch = np.broadcast_to(np.asarray(branch), beta.shape)

    gov_side = (branch == Branch.GOV_MAY_FIGHT) | (branch == Branch.BOTH_MAY_FIGHT)
    reb_side = (branch == Branch.REB_MAY_FIGHT) | (branch == Branch.BOTH_MAY_FIGHT)
    with np.errstate(invalid="ignore"):
        t_g = np.where(gov_side, gov_threshold_array(alpha, x, beta), lo)
        t_r = np.where(reb_side, reb_threshold_array(alpha, x, beta), hi)
    g_end = np.where(branch == Branch.ALWAYS_WAR_LOW, hi, t_g)
    r_start = np.where(branch == Branch.ALWAYS_WAR_HIGH, lo, t_r)

    war_len = (g_end - lo) + (hi - r_start)
    war_mass = _mass(x, lo, g_end) + _mass(x, r_start, hi)
    peace_len = r_start - g_end
    return {
        "gov_war": alpha * war_mass / width,
        "gov_peace": beta * peace_len / width,
        "reb_war": alpha * (war_len - war_mass) / width,
        "reb_peace": (1.0 - beta) * peace_len / width,
        "prob_war": war_len / width,
    }


def payoff_curves(params, beta):
    """Vectorised government/rebel payoffs on the regime-appropriate branches.

    Returns ``(branch_codes, gov_total, reb_total, prob_war)`` arrays.
    """
    beta = np.asarray(beta, dtype=float)
    codes = np.asarray(branch_of(params, beta))
    terms = branch_terms(params, beta, codes)
    gov = terms["gov_war"] + terms["gov_peace"]
    reb = terms["reb_war"] + terms["reb_peace"]
    return codes, gov, reb, terms["prob_war"]


def gov_payoff_curve(params, beta):
    return payoff_curves(params, beta)[1]


def _breakdown(params, beta, side):
    code = branch_of(params, beta)
    t = branch_terms(params, beta, code)
    war, peace = float(t[f"{side}_war"]), float(t[f"{side}_peace"])
    prob_war = float(t["prob_war"])
    # edge round-off only; anything larger is a real bug
    assert -1e-12 < prob_war < 1.0 + 1e-12, prob_war
    prob_war = min(max(prob_war, 0.0), 1.0)
    if code == Branch.GUARANTEED_PEACE:
        total = beta if side == "gov" else 1.0 - beta
        return PayoffBreakdown(total, code, 0.0, total, 0.0)
    return PayoffBreakdown(war + peace, code, war, peace, prob_war)


def _check_beta(beta):
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta={beta!r} must lie in [0, 1]")


def gov_payoff(params, beta: float) -> PayoffBreakdown:
    """Government's expected payoff when a peace-guaranteeing split exists."""
    _check_beta(beta)
    if not has_peace_interval(params):
        raise RegimeMismatch("no peace-guaranteeing split exists; use gov_payoff_high")
    return _breakdown(params, beta, "gov")


def gov_payoff_high(params, beta: float) -> PayoffBreakdown:
    """Government's expected payoff when uncertainty rules out guaranteed peace."""
    _check_beta(beta)
    if has_peace_interval(params):
        raise RegimeMismatch("a peace-guaranteeing split exists; use gov_payoff")
    return _breakdown(params, beta, "gov")


def gov_payoff_any(params, beta: float) -> PayoffBreakdown:
    """Government payoff with the regime picked automatically."""
    _check_beta(beta)
    return _breakdown(params, beta, "gov")


def reb_payoff(params, beta: float) -> PayoffBreakdown:
    """Rebels' expected payoff; the regime is picked automatically."""
    _check_beta(beta)
    return _breakdown(params, beta, "reb")
