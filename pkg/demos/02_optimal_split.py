"""The government's optimal split along an uncertainty sweep.

With low uncertainty it buys peace at the rebels' reservation split, which
falls as uncertainty rises. Past a switch point it prefers a larger share and
accepts some risk of war. With a negative arms gap it never does.
"""
import numpy as np

from peacegame import SymmetricParams, SweepSpec, run_sweep, solve, switch_condition

for alpha in (0.5, 0.7, 0.9):
    hi = 5.0 if alpha <= 0.5 else None
    res = run_sweep(SweepSpec(SymmetricParams.from_x(alpha, 1.0, 1.0), hi=hi, count=200))
    print(f"\nalpha={alpha}, x=1: switch at a={res.switch_point}")
    for row in res.rows[::25] + [res.rows[-1]]:
        print(f"  a={row.value:.4f}  beta*={row.beta_star:.4f}  {row.regime:14s}"
              f"  P(war)={row.prob_war:.4f}  welfare={row.welfare:.4f}")

# The switch point lines up with the sign of the payoff slope at the boundary
p = SymmetricParams.from_x(0.7, 1.0, 0.9)
sc = switch_condition(p)
print(f"\nalpha=0.7, x=1, a=0.9: slope at r- = {sc.slope_at_boundary:+.4f}, "
      f"risk band for x = {np.round(sc.x_band, 4)}, solve -> {solve(p).regime.value}")

res = run_sweep(SweepSpec(SymmetricParams.from_x(0.7, -1.0, 1.0), count=200))
print("\nx=-1: regimes seen:", sorted({r.regime for r in res.rows}))
