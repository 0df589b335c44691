"""Monte Carlo simulation of the one-shot game.

Each draw plays the game literally: sample the shock, ask both sides for
their best response, and if anyone fights, draw the winner from the contest
success function. The simulator consults the thresholds only through
:func:`peacegame.stage2.best_response`, so agreement with the closed-form
payoffs is an end-to-end check.

Random numbers
--------------
Draws are processed in chunks of ``CHUNK`` (2**20). Chunk ``k`` uses a
Philox-4x64-10 counter-based generator seeded with
``numpy.random.SeedSequence(seed, spawn_key=(k,))``; uniforms on ``[0, 1)``
are numpy's 53-bit conversion of successive 64-bit outputs. Shocks and
winner draws come from the same stream: one block of shock uniforms, then
one block of winner uniforms per chunk. Chunk sums are combined with
:func:`math.fsum`, so results do not depend on how chunks are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .model import SymmetricParams, gov_win_prob
from .outcomes import war_probability
from .payoff import gov_payoff_any, reb_payoff
from .stage2 import best_response, threshold_set

CHUNK = 1 << 20


@dataclass(frozen=True)
class SimConfig:
    params: object
    beta: float
    draws: int
    seed: int

    def __post_init__(self):
        if self.draws < 1:
            raise ValueError("draws must be at least 1")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta={self.beta!r} must lie in [0, 1]")


@dataclass(frozen=True)
class SimEstimate:
    gov_mean: float
    reb_mean: float
    war_freq: float
    gov_se: float
    reb_se: float
    war_se: float
    draws: int


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(chunk,))
    return np.random.Generator(np.random.Philox(ss))


def _play_chunk(params, beta, n, rng):
    u = rng.random(n)
    eps = params.a_lo + (params.a_hi - params.a_lo) * u
    gov_fights, reb_fights = best_response(params, beta, eps)
    war = gov_fights | reb_fights
    gov_wins = rng.random(n) < gov_win_prob(params, eps)
    alpha = params.alpha
    gov = np.where(war, np.where(gov_wins, alpha, 0.0), beta)
    reb = np.where(war, np.where(gov_wins, 0.0, alpha), 1.0 - beta)
    w = war.astype(float)
    return [(float(v.sum()), float((v * v).sum())) for v in (gov, reb, w)]


def simulate(config: SimConfig, workers: int = 1) -> SimEstimate:
    """Estimate expected payoffs and the war frequency by simulation."""
    n_total = int(config.draws)
    sizes = [CHUNK] * (n_total // CHUNK)
    if n_total % CHUNK:
        sizes.append(n_total % CHUNK)

    def run(k):
        return _play_chunk(config.params, config.beta, sizes[k], chunk_generator(config.seed, k))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(k) for k in range(len(sizes))]

    stats = []
    for j in range(3):
        s = math.fsum(p[j][0] for p in parts)
        s2 = math.fsum(p[j][1] for p in parts)
        mean = s / n_total
        if n_total > 1:
            var = max(s2 - n_total * mean * mean, 0.0) / (n_total - 1)
            se = math.sqrt(var / n_total)
        else:
            se = math.inf
        stats.append((mean, se))
    (g, gse), (r, rse), (w, wse) = stats
    return SimEstimate(g, r, w, gse, rse, wse, n_total)


@dataclass(frozen=True)
class ValidationReport:
    analytic: dict
    simulated: dict
    z_scores: dict
    flags: list = field(default_factory=list)
    threshold: float = 4.0

    @property
    def ok(self) -> bool:
        return not self.flags


def _z(delta, se):
    if se == 0.0:
        # degenerate sample: no randomness, so the estimate must be exact
        return 0.0 if abs(delta) <= 1e-12 else math.inf
    return abs(delta) / se


def compare(analytic: dict, est: SimEstimate, threshold: float = 4.0) -> ValidationReport:
    simulated = {"gov": est.gov_mean, "reb": est.reb_mean, "war": est.war_freq}
    ses = {"gov": est.gov_se, "reb": est.reb_se, "war": est.war_se}
    z = {k: _z(simulated[k] - analytic[k], ses[k]) for k in analytic}
    flags = [k for k, v in z.items() if v > threshold]
    return ValidationReport(dict(analytic), simulated, z, flags, threshold)


def analytic_values(params, beta):
    return {
        "gov": gov_payoff_any(params, beta).total,
        "reb": reb_payoff(params, beta).total,
        "war": war_probability(params, beta),
    }


def validate_analytics(params, beta: float, draws: int, seed: int,
                       threshold: float = 4.0) -> ValidationReport:
    """Compare closed-form payoffs and war probability with a simulation."""
    est = simulate(SimConfig(params, beta, draws, seed))
    return compare(analytic_values(params, beta), est, threshold)


def random_battery(n: int, seed: int):
    """Random ``(SymmetricParams, beta)`` pairs spanning both regimes."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        alpha = rng.uniform(0.3, 0.95)
        x = rng.uniform(-2.5, 2.5)
        a_half = rng.uniform(0.05, 3.0)
        params = SymmetricParams(x, 0.0, alpha, a_half)
        # concentrate splits where outcomes actually depend on the shock
        ts = threshold_set(params)
        beta = rng.uniform(max(ts.beta_g_minus - 0.05, 0.0), min(ts.beta_r_plus + 0.05, 1.0))
        out.append((params, beta))
    return out
