"""Second-stage best responses once the shock is known.

Given a proposed split ``beta`` (the government's share), the government
fights when the shock is low enough, ``eps <= t_g``, and the rebels fight when
it is high enough, ``eps >= t_r``. These thresholds do not depend on the shock
distribution. Comparing them against the support ``[a_lo, a_hi]`` yields the
four transfer bounds

* ``beta_g_minus``: below it the government always fights,
* ``beta_g_plus``: at or above it the government always accepts,
* ``beta_r_minus``: at or below it the rebels always accept,
* ``beta_r_plus``: above it the rebels always fight,

and the peace-guaranteeing interval ``[beta_g_plus, beta_r_minus]``.

The rebel threshold is ``t_r = x - log(alpha / (1 - beta) - 1)``. This is
the sign that follows from ``alpha * p_r >= 1 - beta``; a shorter statement of
the result that circulates with a ``+log`` is inconsistent with its own
derivation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .model import SymmetricParams


class Decision(enum.Enum):
    ACCEPT = "Accept"
    FIGHT = "Fight"


class _Unbounded:
    """Marker returned by :func:`a_crit` when peace can always be guaranteed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __bool__(self):
        return False


UNBOUNDED = _Unbounded()


@dataclass(frozen=True)
class FightThresholds:
    """Shock cut-offs for a fixed ``beta``.

    ``t_g`` is ``-inf`` when the government never fights (``beta >= alpha``)
    and ``+inf`` when it always fights (``beta == 0``); ``t_r`` is ``+inf``
    when the rebels never fight and ``-inf`` when they always fight. Use the
    ``*_fights_ever`` properties rather than doing arithmetic on the
    infinities.
    """

    t_g: float
    t_r: float

    @property
    def gov_fights_ever(self) -> bool:
        return self.t_g != -math.inf

    @property
    def reb_fights_ever(self) -> bool:
        return self.t_r != math.inf


@dataclass(frozen=True)
class ThresholdSet:
    beta_g_minus: float
    beta_g_plus: float
    beta_r_minus: float
    beta_r_plus: float

    def as_tuple(self):
        return (self.beta_g_minus, self.beta_g_plus, self.beta_r_minus, self.beta_r_plus)


@dataclass(frozen=True)
class PeaceInterval:
    exists: bool
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


def _t_g(alpha, x, beta):
    if beta <= 0.0:
        return math.inf
    if beta >= alpha:
        return -math.inf
    return math.log(alpha / beta - 1.0) + x


def _t_r(alpha, x, beta):
    if beta >= 1.0:
        return -math.inf
    share = 1.0 - beta
    if share >= alpha:
        return math.inf
    return x - math.log(alpha / share - 1.0)


def fight_thresholds(params, beta: float) -> FightThresholds:
    """Fight cut-offs in shock space for the split ``beta``."""
    return FightThresholds(_t_g(params.alpha, params.x, beta), _t_r(params.alpha, params.x, beta))


def gov_threshold_array(alpha, x, beta):
    """Vectorised ``t_g``; infinities mark the never/always-fight cases."""
    beta = np.asarray(beta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        t = np.log(alpha / beta - 1.0) + x
    t = np.where(beta >= alpha, -np.inf, t)
    return np.where(beta <= 0.0, np.inf, t)


def reb_threshold_array(alpha, x, beta):
    """Vectorised ``t_r``."""
    beta = np.asarray(beta, dtype=float)
    share = 1.0 - beta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        t = x - np.log(alpha / share - 1.0)
    t = np.where(share >= alpha, np.inf, t)
    return np.where(beta >= 1.0, -np.inf, t)


def best_response(params, beta: float, eps):
    """Each side's decision at shock ``eps``; ties resolve to Accept.

    Scalar ``eps`` returns a ``(Decision, Decision)`` pair for (G, R). Array
    ``eps`` returns two boolean fight masks instead, which is what the Monte
    Carlo simulator consumes.
    """
    th = fight_thresholds(params, beta)
    if np.ndim(eps) == 0:
        g = Decision.FIGHT if eps < th.t_g else Decision.ACCEPT
        r = Decision.FIGHT if eps > th.t_r else Decision.ACCEPT
        return g, r
    eps = np.asarray(eps, dtype=float)
    return eps < th.t_g, eps > th.t_r


def threshold_set(params) -> ThresholdSet:
    """Closed-form transfer bounds for the support ``[a_lo, a_hi]``.

    Each bound solves ``t_g(beta) = a_lo`` (etc.) for ``beta``. Written with
    the logistic so that extreme supports do not overflow.
    """
    alpha, x = params.alpha, params.x
    lo, hi = params.a_lo, params.a_hi
    return ThresholdSet(
        beta_g_minus=alpha * _sigmoid(x - hi),
        beta_g_plus=alpha * _sigmoid(x - lo),
        beta_r_minus=1.0 - alpha * _sigmoid(hi - x),
        beta_r_plus=1.0 - alpha * _sigmoid(lo - x),
    )


def _sigmoid(z):
    # 1 / (1 + exp(-z))
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def peace_interval(params) -> PeaceInterval:
    ts = threshold_set(params)
    return PeaceInterval(ts.beta_g_plus <= ts.beta_r_minus, ts.beta_g_plus, ts.beta_r_minus)


def a_crit(alpha: float, x: float):
    """Largest half-width ``a`` of a symmetric support that still admits peace.

    Returns :data:`UNBOUNDED` for ``alpha <= 1/2``: the quadratic in ``e**a``
    then has no positive root and the peace interval never closes.

    >>> round(a_crit(0.7, 0.0), 6)
    0.916291
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha={alpha!r} must lie strictly inside (0, 1)")
    if not math.isfinite(x):
        raise ValueError(f"x={x!r} must be finite")
    if alpha <= 0.5:
        return UNBOUNDED
    c = 1.0 - 2.0 * alpha
    if abs(x) > 700.0:
        # cosh overflows; the root is then zeta / c to double precision
        return abs(x) + math.log((1.0 - alpha) / (2.0 * alpha - 1.0))
    # zeta = (alpha - 1) * (e^x + e^-x)
    zeta = 2.0 * (alpha - 1.0) * math.cosh(x)
    # numerator and denominator are both negative: no cancellation
    z2 = (zeta - math.sqrt(zeta * zeta - 4.0 * c)) / (2.0 * c)
    return math.log(z2)


def peace_gap(params) -> float:
    """``beta_r_minus - beta_g_plus``; non-negative exactly when peace can be guaranteed."""
    ts = threshold_set(params)
    return ts.beta_r_minus - ts.beta_g_plus


def critical_width(alpha: float, x: float, center: float = 0.0, *, xtol: float = 1e-12,
                   max_width: float = 1e3):
    """Numeric critical support width for ``[center - w/2, center + w/2]``.

    Bisects the peace gap in the full width ``w``. Returns :data:`UNBOUNDED`
    if the gap stays non-negative up to ``max_width``. For ``center == 0``
    this equals ``2 * a_crit(alpha, x)``.
    """
    def gap(w):
        # shifting the support by `center` is the same as lowering x by it
        return peace_gap(SymmetricParams(x - center, 0.0, alpha, w / 2.0))

    if gap(max_width) >= 0.0:
        return UNBOUNDED
    return optimize.brentq(gap, 0.0, max_width, xtol=xtol, rtol=4 * np.finfo(float).eps)
