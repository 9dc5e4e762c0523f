"""The distance law inside the root block at the critical weight.

Run:  python3 demos/distance_profile.py
"""

import numpy as np

from blockmap import profile as prof

# %% Cumulative profile and density on a coarse grid
curve = prof.profile_curve(np.linspace(0, 5, 11), crosscheck=True)
print("   r     Phi        rho")
for r, f, d in zip(curve.r_grid, curve.phi_values, curve.rho_values):
    print(f"{r:4.1f}  {f:.8f}  {d:.8f}")
print("checks:", curve.check())

# %% Small r: Phi grows like K r^2
K = prof.SMALL_R_CONSTANT
for r in (0.01, 0.05, 0.1):
    print(f"r={r}: Phi / (K r^2) = {prof.phi(r) / (K * r * r):.7f}")

# %% Tail slope of log(-log rho) against log r, window by window
for lo, hi in ((2.0, 3.0), (2.5, 4.0), (3.5, 5.0), (4.5, 6.0)):
    print(f"[{lo}, {hi}] slope = {prof.fisher_tail_exponent(lo, hi):.4f}")
