"""Reading exponents off 50 coefficients with iterated finite differences.

Run:  python3 demos/exponent_curves.py   (about 10 s)
"""

from fractions import Fraction

import mpmath as mp

from blockmap import exponents as ex
from blockmap.criticality import critical_data
from blockmap.pipeline import two_point_series, weighted_series

M = weighted_series("quad", 50)
S = two_point_series("quad", 35)


def estimate(series, u, N, p, eta=0):
    window = ex.SequenceWindow(tuple(ex.evaluate_table(series, u)), "", eta)
    return ex.np_estimate(window, N, p).estimate


# %% The exponent of m_n(u) jumps from 5/2 to 5/3 at u_cr = 9/5, then 3/2 beyond
print("   u     (50,5)     (35,6) two-point")
for u in (Fraction(1, 2), 1, Fraction(3, 2), Fraction(9, 5), 2, 3, 5):
    print(f"{float(u):5.2f}  {mp.nstr(estimate(M, u, 50, 5), 6):>8}   {mp.nstr(estimate(S, u, 35, 6), 6):>8}")

# %% How the estimate at u_cr settles as p grows
for p in range(1, 7):
    print(f"p={p}: {mp.nstr(estimate(M, Fraction(9, 5), 50, p), 8)}")

# %% Cubic maps at u_cr need a log correction
u_cr = critical_data("cubic").u_cr
C = weighted_series("cubic", 34)
print("\ncubic at u_cr:  plain", mp.nstr(estimate(C, u_cr, 34, 5), 6),
      "  with (log n)^(1/2)", mp.nstr(estimate(C, u_cr, 34, 5, 0.5), 6))
