"""Comparative statics: solve the game along a one-parameter grid.

A sweep varies one of ``a_half``, ``alpha`` or ``x`` with everything else
held at the base values, solves each point independently and records the
optimum and its outcomes. Along a half-width sweep it also locates the first
switch away from guaranteed peace and any jump in ``beta*``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .model import ParamError, SymmetricParams, validate
from .optimizer import Regime, detect_jump, solve
from .outcomes import outcome_report
from .stage2 import UNBOUNDED, a_crit, threshold_set

SWEEPABLE = ("a_half", "alpha", "x")
LOWER_GUARD = 1e-4
DEFAULT_COUNT = 400
SWITCH_TOL = 1e-8

COLUMNS = ("beta_star", "regime", "beta_r_minus", "beta_g_plus", "prob_war", "welfare",
           "gov_payoff", "reb_payoff", "is_unique", "error")


@dataclass(frozen=True)
class SweepSpec:
    base: SymmetricParams
    param: str = "a_half"
    lo: float = LOWER_GUARD
    hi: float | None = None
    count: int = DEFAULT_COUNT
    spacing: str = "linear"
    auto_truncate_at_acrit: bool = True

    def __post_init__(self):
        if self.param not in SWEEPABLE:
            raise ValueError(f"param must be one of {SWEEPABLE}, got {self.param!r}")
        if self.count < 2:
            raise ValueError("count must be at least 2")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be 'linear' or 'log'")
        if self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError("log spacing needs lo > 0")

    def upper(self) -> float:
        hi = self.hi
        if self.param == "a_half" and self.auto_truncate_at_acrit:
            crit = a_crit(self.base.alpha, self.base.x)
            if crit is not UNBOUNDED:
                # stay a hair inside so the last point still admits peace
                crit *= 1.0 - 1e-12
                hi = crit if hi is None else min(hi, crit)
        if hi is None:
            raise ValueError("hi is required unless sweeping a_half with a bounded a_crit")
        if not self.lo < hi:
            raise ValueError(f"empty grid after truncation: [{self.lo}, {hi}]")
        return hi

    def grid(self) -> np.ndarray:
        hi = self.upper()
        if self.spacing == "log":
            return np.geomspace(self.lo, hi, self.count)
        return np.linspace(self.lo, hi, self.count)

    def point(self, value: float) -> SymmetricParams:
        b = self.base
        if self.param == "a_half":
            return SymmetricParams(b.y_g, b.y_r, b.alpha, value)
        if self.param == "alpha":
            return SymmetricParams(b.y_g, b.y_r, value, b.a_half)
        # x moves the government's arms, rebels stay put
        return SymmetricParams(b.y_r + value, b.y_r, b.alpha, b.a_half)


@dataclass(frozen=True)
class SweepRow:
    value: float
    beta_star: float = math.nan
    regime: str = ""
    beta_r_minus: float = math.nan
    beta_g_plus: float = math.nan
    prob_war: float = math.nan
    welfare: float = math.nan
    gov_payoff: float = math.nan
    reb_payoff: float = math.nan
    is_unique: bool | None = None
    error: str = ""


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list
    switch_point: float | None = None
    jump_point: float | None = None
    transitions: list = field(default_factory=list)

    @property
    def double_switch(self) -> bool:
        """Peace, then risk, then peace again along the grid."""
        kinds = [t[1:] for t in self.transitions]
        return ((Regime.GUARANTEE_PEACE.value, Regime.RISK_WAR.value) in kinds
                and (Regime.RISK_WAR.value, Regime.GUARANTEE_PEACE.value) in kinds)


def _solve_point(params):
    try:
        validate(params)
        sol = solve(params)
        rep = outcome_report(params, sol)
    except (ParamError, ValueError) as exc:
        codes = getattr(exc, "codes", None)
        return None, (codes[0] if codes else type(exc).__name__)
    return sol, rep


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    grid = spec.grid()
    pts = [spec.point(float(v)) for v in grid]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_solve_point, pts, chunksize=8))
    else:
        results = [_solve_point(p) for p in pts]

    rows = []
    for v, p, (sol, rep) in zip(grid, pts, results):
        if sol is None:
            rows.append(SweepRow(float(v), error=rep))
            continue
        ts = threshold_set(p)
        rows.append(SweepRow(float(v), sol.beta_star, sol.regime.value, ts.beta_r_minus,
                             ts.beta_g_plus, rep.prob_war, rep.welfare, rep.gov_payoff,
                             rep.reb_payoff, sol.is_unique))

    result = SweepResult(spec, rows)
    for i in range(1, len(rows)):
        a, b = rows[i - 1].regime, rows[i].regime
        if a and b and a != b:
            result.transitions.append((i, a, b))

    peace = Regime.GUARANTEE_PEACE.value
    for i, before, after in result.transitions:
        if before == peace:
            result.switch_point = _refine_switch(spec, grid[i - 1], grid[i])
            break

    if spec.param == "a_half":
        sols = [r[0] for r in results]
        if all(s is not None for s in sols):
            jump = detect_jump(spec.base, grid, solutions=sols)
            result.jump_point = jump.a_jump if jump else None
    return result


def _refine_switch(spec, lo, hi):
    def peaceful(v):
        sol, _ = _solve_point(spec.point(v))
        return sol is not None and sol.regime is Regime.GUARANTEE_PEACE

    while hi - lo > SWITCH_TOL:
        mid = 0.5 * (lo + hi)
        if peaceful(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return f"{v:.12g}"


def csv_text(rows, param: str = "a_half") -> str:
    if not rows:
        raise ValueError("no rows to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow((param, *COLUMNS))
    for r in rows:
        if r.error:
            writer.writerow((_fmt(r.value), *([""] * (len(COLUMNS) - 1)), r.error))
        else:
            writer.writerow((_fmt(r.value), *(_fmt(getattr(r, c)) for c in COLUMNS)))
    return buf.getvalue()


def emit_csv(rows, destination, param: str = "a_half") -> None:
    """Write rows as CSV to a path or an open text stream."""
    text = csv_text(rows, param)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def annotation_text(result: SweepResult) -> str:
    lines = [
        f"param={result.spec.param}",
        f"switch_point={_fmt(result.switch_point) or 'none'}",
        f"jump_point={_fmt(result.jump_point) or 'none'}",
        f"double_switch={'true' if result.double_switch else 'false'}",
    ]
    for i, a, b in result.transitions:
        lines.append(f"transition={_fmt(result.rows[i - 1].value)},{_fmt(result.rows[i].value)},{a},{b}")
    return "\n".join(lines) + "\n"


def write_annotations(result: SweepResult, path) -> None:
    Path(path).write_text(annotation_text(result))


def with_param(spec: SweepSpec, **changes) -> SweepSpec:
    return replace(spec, **changes)
