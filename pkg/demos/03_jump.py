"""A jump in the optimal split.

For a government that is well armed but faces destructive wars, the risky
optimum can tie with the peace boundary at one uncertainty level. There the
optimal split jumps instead of moving continuously.
"""
import numpy as np

from peacegame import SymmetricParams, detect_jump, solve

base = SymmetricParams.from_x(0.45, 2.5, 1.0)
grid = np.linspace(1e-4, 15.0, 400)
jump = detect_jump(base, grid)
print(f"jump at a={jump.a_jump:.8f} (bracket {jump.bracket[0]:.4f}..{jump.bracket[1]:.4f})")
print(f"payoff gap between the two candidates there: {jump.gap:.1e}")

for a in (jump.a_jump - 0.01, jump.a_jump + 0.01):
    sol = solve(base.with_half_width(a))
    print(f"  a={a:.4f}  beta*={sol.beta_star:.4f}  {sol.regime.value}")
    for beta, value in sol.candidates:
        print(f"      candidate {beta:.4f} -> {value:.6f}")
