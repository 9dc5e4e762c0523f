"""Block-weighted counts for rooted quadrangulations and Hamiltonian cubic maps.

Run:  python3 demos/weighted_counts.py
"""

from blockmap.models import brute_force_weighted_counts, closed_form_count
from blockmap.pipeline import block_counts, weighted_series

# %% Unweighted counts and the blocks hiding inside them
counts = [closed_form_count("quad", n) for n in range(9)]
print("m_n(1)  :", counts)
print("b_j     :", block_counts("quad", 8))

# %% Put a weight u on every block
M = weighted_series("quad", 6)
for n, poly in enumerate(M):
    print(f"m_{n}(u) = {poly}")

# %% Setting u = 1 gives back the plain counts
assert M.at(u=1) == counts[:7]

# %% Cubic maps: the same polynomials straight from arch systems
brute = brute_force_weighted_counts("cubic", 6)
series = weighted_series("cubic", 6)
for n in range(7):
    flag = "ok" if brute[n] == series[n] else "MISMATCH"
    print(f"n={n}  {series[n]}  [{flag}]")
