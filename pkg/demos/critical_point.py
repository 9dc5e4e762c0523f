"""Where the block weight tips maps from "one big block" to "tree of blocks".

Run:  python3 demos/critical_point.py
"""

import mpmath as mp

from blockmap import criticality as crit

# %% Critical weight and singularity for each family with a closed form
for family in ("quad", "cubic", "meander"):
    data = crit.critical_data(family)
    print(f"{family:8s} u_cr = {mp.nstr(data.u_cr, 12):>16}   g_c(u_cr) = {mp.nstr(data.g_c_at_ucr, 12)}")

# %% The singularity location as a function of u (quadrangulations)
quad = crit.critical_data("quad")
print("\n   u      g*(u)")
for u in (0.5, 1, 1.5, 1.8, 2, 3, 5, 10):
    print(f"{u:5.2f}  {mp.nstr(quad.g_star(u), 12)}")

# %% Exponents on both sides of the transition
for c in (0, -2, -1):
    e = crit.lqg_exponents(c)
    print(f"\nc = {c}: gamma_S = {e.gamma_S},  dual gamma_S = {e.gamma_S_prime}")
    print(f"        gamma = {e.gamma},  gamma' = {e.gamma_prime}")

# %% Dimensions in the tree phase of quadrangulations
gp = float(crit.lqg_exponents(0).gamma_prime)
D, d_tilde, d_quad = crit.hausdorff_dimensions(gp, 4)
print(f"\nD = {D:.4f}   block dimension = {d_tilde:.4f}   continued formula = {float(d_quad):.4f}")
