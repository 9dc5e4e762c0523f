"""Scaling-limit distance profile inside the root block at the critical weight.

``Phi(r)`` is the probability that the rescaled distance to a marked edge
of the root block is at most ``r``; ``rho = Phi'``.  Both are integrals
over ``mu`` of ``exp(-mu^3)`` against trigonometric/hyperbolic kernels of
``x = mu r^2``.  Small ``x`` uses hard-coded Taylor series (the closed
forms cancel catastrophically there); large ``x`` divides through by
``cosh`` so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.special import gamma as gamma_fn

from .errors import ConvergenceError

__all__ = [
    "MU_MAX",
    "SERIES_SWITCH",
    "SMALL_R_CONSTANT",
    "ProfileCurve",
    "phi_kernel",
    "rho_kernel",
    "phi",
    "rho",
    "phi_contour_crosscheck",
    "contour_bracket",
    "fisher_tail_exponent",
    "profile_curve",
]

# exp(-mu^3) mu^4 is below 1e-30 past this point
MU_MAX = 4.2
SERIES_SWITCH = 0.5

_CBRT2 = 2 ** (1 / 3)
_CBRT4 = 2 ** (2 / 3)
_SQRT3 = math.sqrt(3)
_GAMMA43 = float(gamma_fn(4 / 3))
_PHI_NORM = 3 / _GAMMA43
_RHO_NORM = 9 * 2 ** (7 / 3) / _GAMMA43

# Phi ~ K r^2 and rho ~ 2 K r at small r
SMALL_R_CONSTANT = 3 * float(gamma_fn(5 / 3)) / (5 * 2 ** (4 / 3) * _GAMMA43)

# Taylor coefficients in x of the Phi bracket and of the rho kernel over sqrt(x)
_PHI_SERIES = np.array([
    0.0,
    3 * _CBRT4 / 20,
    0.0,
    -3 / 400,
    9 * _CBRT4 / 12320,
    0.0,
    -3 / 123200,
    32553 * _CBRT4 / 15247232000,
    0.0,
    -523833 / 8385977600000,
    699147 * _CBRT4 / 133260807680000,
    0.0,
    -5921379 / 41044328765440000,
])
_RHO_SERIES = np.array([
    _CBRT2 / 40,
    0.0,
    -3 * _CBRT4 / 1600,
    3 * _CBRT2 / 6160,
    0.0,
    -3 * _CBRT4 / 246400,
    10851 * _CBRT2 / 4356352000,
    0.0,
    -1571499 * _CBRT4 / 33543910400000,
    233049 * _CBRT2 / 26652161536000,
    0.0,
    -5921379 * _CBRT4 / 41044328765440000,
    30535021323 * _CBRT2 / 1190285534197760000000,
])


def _horner(coeffs: np.ndarray, x):
    out = np.zeros_like(x)
    for c in coeffs[::-1]:
        out = out * x + c
    return out


def _trig(x):
    y = np.sqrt(x) / _CBRT4
    e = np.exp(-3 * y)
    return np.cos(_SQRT3 * y), np.sin(_SQRT3 * y), np.tanh(3 * y), 2 * e / (1 + e * e)


def phi_kernel(x, closed_form: bool = False):
    """Bracket ``1 - 6 (1 - c ch + s sh / sqrt 3) / (c - ch)^2`` of the Phi integral.

    ``closed_form`` skips the series branch (for switchover tests).
    """
    x = np.asarray(x, dtype=float)
    small = np.zeros(x.shape, bool) if closed_form else x < SERIES_SWITCH
    big = np.where(small, 1.0, x)
    c, s, th, ich = _trig(big)
    num = ich * ich - c * ich + s * th * ich / _SQRT3
    out = 1 - 6 * num / (c * ich - 1) ** 2
    return np.where(small, _horner(_PHI_SERIES, x), out)


def rho_kernel(x, closed_form: bool = False):
    """``sh (c (c + ch) - 2) / (c - ch)^3`` from the rho integral."""
    x = np.asarray(x, dtype=float)
    small = np.zeros(x.shape, bool) if closed_form else x < SERIES_SWITCH
    big = np.where(small, 1.0, x)
    c, _, th, ich = _trig(big)
    out = th * (c * c * ich * ich + c * ich - 2 * ich * ich) / (c * ich - 1) ** 3
    return np.where(small, np.sqrt(x) * _horner(_RHO_SERIES, x), out)


def _quad(f, tol: float):
    value, err = integrate.quad(f, 0.0, MU_MAX, epsabs=1e-15, epsrel=tol, limit=400)
    if err > max(1e-13, 100 * tol * abs(value)):
        raise ConvergenceError(f"quadrature error estimate {err:.2e}")
    return value


def phi(r: float, tol: float = 1e-12) -> float:
    """Cumulative distance profile; ``Phi(0) = 0`` and ``Phi -> 1``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return 0.0
    r2 = r * r
    return _PHI_NORM * _quad(lambda mu: math.exp(-mu ** 3) * mu ** 3 * float(phi_kernel(mu * r2)), tol)


def rho(r: float, tol: float = 1e-12) -> float:
    """Distance density ``dPhi/dr``."""
    if r <= 0:
        raise ValueError("r must be positive")
    r2 = r * r
    return _RHO_NORM * _quad(lambda mu: math.exp(-mu ** 3) * mu ** 3.5 * float(rho_kernel(mu * r2)), tol)


_SIGMA = 3 ** 0.25 / math.sqrt(2)
_SCALE = 3 ** 0.25 / 2 ** (1 / 6)
_ROT = complex(math.cos(math.pi / 6), math.sin(math.pi / 6))


def _scaling_function(L: complex) -> complex:
    """``(2/3) sigma^2 (1 + 3 / sinh^2(sigma L))`` for ``Re L > 0``."""
    e = np.exp(-2 * _SIGMA * L)
    return (2 / 3) * _SIGMA ** 2 * (1 + 12 * e / (1 - e) ** 2)


def contour_bracket(mu: float, r: float) -> complex:
    """Sum of the two conjugate contour branches; real up to rounding."""
    upper = _ROT.conjugate() * _scaling_function(_SCALE * math.sqrt(mu) * _ROT * r)
    lower = _ROT * _scaling_function(_SCALE * math.sqrt(mu) * _ROT.conjugate() * r)
    return complex(upper + lower)


def phi_contour_crosscheck(r: float, tol: float = 1e-12) -> float:
    """Phi from the unsimplified contour form, in complex arithmetic."""
    if r <= 0:
        raise ValueError("r must be positive")
    return _PHI_NORM * _quad(lambda mu: math.exp(-mu ** 3) * mu ** 3 * contour_bracket(mu, r).real
                             if mu > 0 else 0.0, tol)


def fisher_tail_exponent(r_min: float, r_max: float, points: int = 16,
                         density: Callable[[float], float] = rho) -> float:
    """Slope of ``log(-log rho)`` against ``log r`` on ``[r_min, r_max]``.

    Raises:
        ValueError: window outside ``r >= 2`` or ``rho`` not in ``(0, 1)``
            somewhere on it (underflow or no tail yet).
    """
    if not r_max > r_min >= 2:
        raise ValueError("need r_max > r_min >= 2")
    rs = np.linspace(r_min, r_max, points)
    values = np.array([density(float(r)) for r in rs])
    if np.any(values <= np.finfo(float).tiny) or np.any(values >= 1):
        raise ValueError("rho underflows or is not below 1 on the window; no tail fit possible")
    slope, _ = np.polyfit(np.log(rs), np.log(-np.log(values)), 1)
    return float(slope)


@dataclass
class ProfileCurve:
    r_grid: list
    phi_values: list
    rho_values: list
    quadrature_tolerance: float
    contour_values: list | None = None

    def check(self) -> dict:
        """Invariant checks on the sampled curve."""
        tol = self.quadrature_tolerance
        phis = np.array(self.phi_values)
        out = {
            "phi_monotone": bool(np.all(np.diff(phis) >= -tol)),
            "phi_in_unit_interval": bool(np.all((phis >= -tol) & (phis <= 1 + tol))),
            "rho_nonnegative": bool(np.all(np.array(self.rho_values) >= -tol)),
        }
        if self.contour_values is not None:
            out["max_contour_deviation"] = float(np.max(np.abs(np.array(self.contour_values) - phis)))
        return out


def profile_curve(r_grid: Sequence[float], crosscheck: bool = False, tol: float = 1e-12) -> ProfileCurve:
    grid = [float(r) for r in r_grid]
    phis = [phi(r, tol) for r in grid]
    # rho(0) = 0 by the small-r law
    rhos = [rho(r, tol) if r > 0 else 0.0 for r in grid]
    contour = None
    if crosscheck:
        contour = [phi_contour_crosscheck(r, tol) if r > 0 else 0.0 for r in grid]
    return ProfileCurve(grid, phis, rhos, max(tol, 1e-10), contour)
