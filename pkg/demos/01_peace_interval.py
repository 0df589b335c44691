"""How the set of peace-guaranteeing splits shrinks as uncertainty grows.

Run with ``python3 demos/01_peace_interval.py``.
"""
import numpy as np

from peacegame import SymmetricParams, a_crit, fight_thresholds, peace_interval, threshold_set
from peacegame.payoff import branch_of

alpha, x = 0.7, 0.0

# At a given split, each side has a cut-off in shock space
params = SymmetricParams.from_x(alpha, x, 0.5)
th = fight_thresholds(params, 0.5)
print(f"beta=0.5: government fights below {th.t_g:+.4f}, rebels fight above {th.t_r:+.4f}")

# The four transfer bounds partition [0, 1]
ts = threshold_set(params)
print("bounds g-, g+, r-, r+:", np.round(ts.as_tuple(), 6))
for beta in np.linspace(0, 1, 11):
    print(f"  beta={beta:.1f}  {branch_of(params, beta).label}")

# Widen the shock support and watch the interval close
crit = a_crit(alpha, x)
print(f"\ncritical half-width: {crit:.6f} (= ln 2.5 = {np.log(2.5):.6f})")
for a in (0.2, 0.5, 0.8, crit, 1.0):
    pi = peace_interval(params.with_half_width(a))
    span = f"[{pi.lo:.4f}, {pi.hi:.4f}]" if pi.exists else "empty"
    print(f"  a={a:.4f}  peace interval {span}")

# A bigger arms gap keeps peace possible for longer; harsher wars shorten it
for al in (0.55, 0.7, 0.9):
    print(f"alpha={al}: a_crit at x=0,1,2.5 ->",
          " ".join(f"{a_crit(al, xx):.4f}" for xx in (0.0, 1.0, 2.5)))
print("alpha=0.45:", a_crit(0.45, 0.0))
