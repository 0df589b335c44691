"""Checking the closed forms against a literal simulation of the game."""
from peacegame import SimConfig, SymmetricParams, simulate, validate_analytics
from peacegame.mc import random_battery

params = SymmetricParams.from_x(0.7, 0.0, 1.0)
est = simulate(SimConfig(params, 0.6, 2_000_000, seed=1))
print(f"war frequency {est.war_freq:.5f} +/- {est.war_se:.5f} (exact 0.35616)")

worst = 0.0
for i, (p, beta) in enumerate(random_battery(20, seed=3)):
    rep = validate_analytics(p, beta, draws=200_000, seed=i)
    worst = max(worst, max(rep.z_scores.values()))
    print(f"  alpha={p.alpha:.3f} x={p.x:+.3f} a={p.a_half:.3f} beta={beta:.3f} "
          f"gov {rep.analytic['gov']:.4f}/{rep.simulated['gov']:.4f}  "
          f"war {rep.analytic['war']:.4f}/{rep.simulated['war']:.4f}")
print(f"largest deviation: {worst:.2f} standard errors")
