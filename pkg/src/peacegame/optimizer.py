"""The government's first-stage choice of split.

Below the rebels' acceptance bound ``r-`` the payoff is weakly increasing and
beyond ``r+`` it is flat at the all-war value, so the optimum lies in
``[r-, r+)``. On ``(r-, r+]`` the payoff derivative is ``g(beta) / width``
with

    g(beta) = -a_lo + x + alpha (1 - alpha) / ((1 - beta)(1 - alpha - beta))
              - log((1 - alpha - beta) / (beta - 1)),

(``-a_lo`` is the half-width for a symmetric support). ``g`` tends to
``-inf`` at both ends of its domain ``(1 - alpha, 1)`` and has a single
interior peak, so it has at most two roots: a local minimum of the payoff
followed by a local maximum. The optimum is therefore either the boundary
``r-`` (guaranteed peace) or the interior maximum (risking war), whichever
pays more.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .payoff import gov_payoff_any, gov_payoff_curve, has_peace_interval
from .stage2 import gov_threshold_array, reb_threshold_array, threshold_set

DOMAIN_GUARD = 1e-10
TIE_TOL = 1e-10
SCAN_POINTS = 2048


class DomainViolation(ValueError):
    pass


class Regime(enum.Enum):
    GUARANTEE_PEACE = "GuaranteePeace"
    RISK_WAR = "RiskWar"
    HIGH_UNCERTAINTY = "HighUncertainty"


@dataclass(frozen=True)
class FocResidual:
    value: float
    beta: float


@dataclass(frozen=True)
class StationaryPoint:
    beta: float
    kind: str  # "max" or "min"
    curvature: float


@dataclass(frozen=True)
class Solution:
    beta_star: float
    regime: Regime
    candidates: list = field(default_factory=list)
    is_unique: bool = True
    near_tie_gap: float = math.inf

    @property
    def payoff(self) -> float:
        return dict(self.candidates)[self.beta_star]


def _rational(alpha, beta):
    return alpha * (1.0 - alpha) / ((1.0 - beta) * (1.0 - alpha - beta))


def _log_term(alpha, beta):
    # log((1 - alpha - beta) / (beta - 1)), split to keep both factors positive
    return np.log(alpha + beta - 1.0) - np.log1p(-beta)


def foc_values(params, beta):
    """Vectorised ``g(beta)`` with no domain checks (NaN outside)."""
    alpha = params.alpha
    beta = np.asarray(beta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return -params.a_lo + params.x + _rational(alpha, beta) - _log_term(alpha, beta)


def _check_domain(params, beta):
    lo = 1.0 - params.alpha + DOMAIN_GUARD
    hi = 1.0 - DOMAIN_GUARD
    if not lo <= beta <= hi:
        raise DomainViolation(f"beta={beta!r} outside the residual's domain [{lo!r}, {hi!r}]")


def foc_residual(params, beta: float) -> FocResidual:
    """First-order residual on the rebels-may-fight branch."""
    _check_domain(params, beta)
    return FocResidual(float(foc_values(params, beta)), beta)


def foc_residual_alt(params, beta: float) -> FocResidual:
    """The same residual written as ``alpha beta/((1-beta)(1-alpha-beta)) + alpha/(1-beta) + ...``."""
    _check_domain(params, beta)
    alpha = params.alpha
    value = (alpha * beta / ((1.0 - beta) * (1.0 - alpha - beta)) + alpha / (1.0 - beta)
             - params.a_lo + params.x - float(_log_term(alpha, beta)))
    return FocResidual(value, beta)


def foc_derivative(params, beta):
    """Analytic ``g'(beta)``."""
    a = params.alpha
    beta = np.asarray(beta, dtype=float)
    num = a * (a * a + 3 * a * beta - 4 * a + beta * beta - 4 * beta + 3)
    return num / ((beta - 1.0) ** 2 * (a + beta - 1.0) ** 2)


def foc_peak(alpha: float) -> float:
    """Location of the single maximum of ``g`` on ``(1 - alpha, 1)``."""
    return 0.5 * (4.0 - 3.0 * alpha - math.sqrt(5.0 * alpha * alpha - 8.0 * alpha + 4.0))


def both_fight_slope(params, beta):
    """Payoff slope times width on the both-may-fight branch."""
    alpha, x = params.alpha, params.x
    beta = np.asarray(beta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_g = gov_threshold_array(alpha, x, beta)
        t_r = reb_threshold_array(alpha, x, beta)
        return t_r - t_g + _rational(alpha, beta)


def _scan_grid(lo, hi, n=SCAN_POINTS, extra=()):
    # log-spaced offsets from both ends: the residual's poles sit just outside
    half = n // 2
    span = hi - lo
    offsets = np.logspace(-12, 0, half) * (span / 2.0)
    pts = np.concatenate([lo + offsets, hi - offsets, [lo, hi], [e for e in extra if lo < e < hi]])
    return np.unique(pts)


def _roots(fn, lo, hi, extra=()):
    if not hi > lo:
        return []
    grid = _scan_grid(lo, hi, extra=extra)
    vals = fn(grid)
    roots = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0.0:
            roots.append(float(grid[i]))
        elif a * b < 0.0:
            r = optimize.brentq(lambda t: float(fn(t)), grid[i], grid[i + 1],
                                xtol=1e-14, rtol=4 * np.finfo(float).eps)
            roots.append(r)
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def _classify(params, beta, span):
    h = 1e-5 * span
    lo_, mid, hi_ = gov_payoff_curve(params, np.array([beta - h, beta, beta + h]))
    curvature = (hi_ - 2.0 * mid + lo_) / (h * h)
    return StationaryPoint(beta, "max" if curvature < 0.0 else "min", float(curvature))


def stationary_points(params, lo: float | None = None, hi: float | None = None):
    """Roots of the first-order residual strictly inside ``(lo, hi)``.

    Defaults to ``(r-, r+)``. Each root is classified as a payoff maximum or
    minimum by a central second difference of the payoff.
    """
    ts = threshold_set(params)
    if lo is None:
        lo = ts.beta_r_minus
    if hi is None:
        hi = ts.beta_r_plus
    lo = max(lo, 1.0 - params.alpha + DOMAIN_GUARD)
    hi = min(hi, 1.0 - DOMAIN_GUARD)
    roots = _roots(lambda b: foc_values(params, b), lo, hi, extra=(foc_peak(params.alpha),))
    span = ts.beta_r_plus - ts.beta_r_minus
    return [_classify(params, r, span) for r in roots if lo < r < hi]


def _pick(params, betas, regime_if_interior, boundary):
    uniq = sorted(set(float(b) for b in betas))
    payoffs = [gov_payoff_any(params, b).total for b in uniq]
    candidates = list(zip(uniq, payoffs))
    best = max(payoffs)
    # peace-preferring tie-break: smallest beta within the tie tolerance
    winners = [b for b, v in candidates if best - v <= TIE_TOL]
    beta_star = winners[0]
    others = [v for b, v in candidates if b != beta_star]
    gap = (dict(candidates)[beta_star] - max(others)) if others else math.inf
    gap = abs(gap) if len(winners) > 1 else gap
    if regime_if_interior is Regime.HIGH_UNCERTAINTY:
        regime = Regime.HIGH_UNCERTAINTY
    else:
        regime = Regime.GUARANTEE_PEACE if beta_star == boundary else regime_if_interior
    return Solution(beta_star, regime, candidates, len(winners) == 1, gap)


def solve(params) -> Solution:
    """Optimal split ``beta*`` and the resulting strategy regime."""
    ts = threshold_set(params)
    if has_peace_interval(params):
        maxima = [sp.beta for sp in stationary_points(params) if sp.kind == "max"]
        return _pick(params, [ts.beta_r_minus, *maxima], Regime.RISK_WAR, ts.beta_r_minus)

    # Peace cannot be guaranteed. The payoff rises up to r-; beyond it the
    # both-may-fight branch runs to g+, then the rebels-may-fight branch.
    span = ts.beta_r_plus - ts.beta_r_minus
    both = _roots(lambda b: both_fight_slope(params, b), ts.beta_r_minus, ts.beta_g_plus)
    both = [b for b in both if _classify(params, b, span).kind == "max"]
    reb = [sp.beta for sp in stationary_points(params, ts.beta_g_plus, ts.beta_r_plus)
           if sp.kind == "max"]
    cands = [ts.beta_r_minus, ts.beta_g_plus, *both, *reb]
    return _pick(params, cands, Regime.HIGH_UNCERTAINTY, ts.beta_r_minus)


# ---------------------------------------------------------------------------
# analytic switch condition


@dataclass(frozen=True)
class SwitchCondition:
    """Whether the payoff slope at ``r-`` is positive, with the ``x`` band.

    ``real_roots`` is False when ``alpha (a + 2) < 2``; then the slope at
    ``r-`` is never positive and ``x_band`` is None.
    """

    flag: bool
    real_roots: bool
    x_band: tuple | None
    slope_at_boundary: float


def switch_condition(params) -> SwitchCondition:
    """Sign test for the payoff slope at the peace boundary (symmetric support).

    With ``u = exp(x - a)`` the slope at ``r-`` is
    ``(2a - (1 - alpha)/alpha * (1 + u)**2 / u) / (2a)``; it is positive
    exactly when ``u`` lies between the roots of
    ``(1 - alpha) u**2 - 2 eta u + (1 - alpha)`` with ``eta = alpha (a + 1) - 1``.
    The roots multiply to one, so the band of ``x`` is symmetric about ``a``.
    """
    alpha, a, x = params.alpha, params.a_hi, params.x
    u = math.exp(x - a)
    slope = (2.0 * a - (1.0 - alpha) / alpha * (1.0 + u) ** 2 / u) / (2.0 * a)
    disc = alpha * a * (alpha * (a + 2.0) - 2.0)
    if disc < 0.0:
        return SwitchCondition(False, False, None, slope)
    eta = alpha * (a + 1.0) - 1.0
    root = math.sqrt(disc)
    u_hi = (eta + root) / (1.0 - alpha)
    # u_lo = 1 / u_hi; written this way to avoid cancellation in eta - root
    band = (a - math.log(u_hi), a + math.log(u_hi))
    return SwitchCondition(band[0] < x < band[1], True, band, slope)


# ---------------------------------------------------------------------------
# jump detection along an uncertainty grid


@dataclass(frozen=True)
class JumpPoint:
    a_jump: float
    bracket: tuple
    gap: float
    beta_peace: float
    beta_risk: float


def _interior_max(params):
    maxima = [sp.beta for sp in stationary_points(params) if sp.kind == "max"]
    return maxima[-1] if maxima else None


def _tie_gap(params):
    """Interior-max payoff minus boundary payoff, or None without an interior max."""
    b = _interior_max(params)
    if b is None:
        return None, None
    r_minus = threshold_set(params).beta_r_minus
    return gov_payoff_any(params, b).total - r_minus, b


def detect_jump(params, a_grid, *, solutions=None, factor: float = 10.0, atol: float = 1e-13):
    """Locate a discontinuity of ``beta*`` along an increasing half-width grid.

    ``params`` fixes ``alpha`` and the arms; its half-width is replaced by
    each grid value. A bracket qualifies when ``beta*`` moves by more than
    ``factor`` times the change in ``r-`` across it. The bracket is refined by
    bisection on the payoff tie between the peace boundary and the interior
    maximum; a continuous switch (where the interior maximum merges into the
    boundary) is rejected at that stage. At most one point is returned.
    """
    a_grid = np.asarray(a_grid, dtype=float)
    pts = [params.with_half_width(float(a)) for a in a_grid]
    if solutions is None:
        solutions = [solve(p) for p in pts]
    r_minus = [threshold_set(p).beta_r_minus for p in pts]
    for i in range(len(pts) - 1):
        d_star = abs(solutions[i + 1].beta_star - solutions[i].beta_star)
        d_ref = abs(r_minus[i + 1] - r_minus[i])
        if d_star <= factor * d_ref:
            continue
        if Regime.HIGH_UNCERTAINTY in (solutions[i].regime, solutions[i + 1].regime):
            continue
        jump = _refine_jump(pts[i], pts[i + 1], factor * d_ref, atol)
        if jump is not None:
            return jump
    return None


def _refine_jump(p_lo, p_hi, min_sep, atol):
    def side(p):
        gap, _ = _tie_gap(p)
        return gap is not None and gap > 0.0

    lo, hi = p_lo.a_hi, p_hi.a_hi
    s_lo = side(p_lo)
    if s_lo == side(p_hi):
        return None
    base = p_lo
    while hi - lo > atol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if side(base.with_half_width(mid)) == s_lo:
            lo = mid
        else:
            hi = mid
    # evaluate the tie at whichever end still has an interior maximum
    for a in (lo, hi, 0.5 * (lo + hi)):
        p = base.with_half_width(a)
        gap, b_int = _tie_gap(p)
        if gap is not None:
            break
    if gap is None:
        return None
    b_peace = threshold_set(p).beta_r_minus
    if b_int - b_peace <= min_sep:
        return None
    return JumpPoint(a, (p_lo.a_hi, p_hi.a_hi), abs(gap), b_peace, b_int)
