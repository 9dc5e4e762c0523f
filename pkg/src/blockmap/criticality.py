"""Critical points of block-weighted maps and the exponent algebra.

The block transition sits at ``u_cr``, fixed by the unweighted series
``M_1`` and its derivative at its radius ``g_1``.  Above ``u_cr`` the
singularity comes from the tree of blocks; ``solve_tc`` locates it by
bisection along a parametrised curve ``(t, B(t), B'(t))``.

Quadrangulations run in exact rationals.  Cubic and meander constants
involve pi and are evaluated with mpmath at 40 digits.  Exponents are
returned as sympy expressions when the central charge is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import mpmath as mp
import sympy as sp
from scipy import integrate

from .errors import ConvergenceError, DataValidationError, OutsideAssumptionsError
from .models import _family

__all__ = [
    "CriticalData",
    "ExponentSet",
    "BlockCurve",
    "QuadCurve",
    "HypergeometricCurve",
    "SeriesCurve",
    "block_curve",
    "ucrit_from_u1_data",
    "gc_at_ucrit",
    "solve_tc",
    "critical_data",
    "critical_data_from_counts",
    "lqg_exponents",
    "kpz",
    "kpz_x",
    "dual_dimension",
    "quantum_ball_density",
    "quantum_ball_mass",
    "sle_coupling",
    "meander_central_charge",
    "hausdorff_dimensions",
    "quad_dimension",
    "quad_block_equation",
    "quad_map_equation",
    "cubic_ucrit_closed_form",
    "cubic_gc_closed_form",
    "meander_ucrit_closed_form",
    "meander_gc_closed_form",
]

WORKING_DPS = 40


def ucrit_from_u1_data(g1, m1, m1_prime):
    """Critical block weight from the unweighted series at its radius.

    Works in whatever arithmetic the inputs use (``Fraction`` stays exact).
    """
    if not (g1 > 0 and m1 > 0 and m1_prime > 0):
        raise OutsideAssumptionsError("g1, M1(g1) and M1'(g1) must be positive")
    slope = 2 * g1 * m1_prime
    den = m1 * (1 - m1) + slope
    if den <= 0:
        raise OutsideAssumptionsError("non-positive denominator: the model has no block transition")
    return (m1 + slope) / den


def gc_at_ucrit(g1, m1, m1_prime):
    """``g_c(u_cr) = g1 (1 + M1 (1 - M1) / (2 g1 M1'))^2``."""
    if m1_prime == 0:
        raise OutsideAssumptionsError("M1'(g1) = 0")
    return g1 * (1 + m1 * (1 - m1) / (2 * g1 * m1_prime)) ** 2


class BlockCurve:
    """Monotone parametrisation ``p -> (t, B(t), B'(t))`` of the block series.

    ``p`` runs over ``[0, p_max]`` with ``t(0) = 0`` and ``t(p_max) = t_cr``.
    """

    p_max = None

    def point(self, p):
        raise NotImplementedError

    def correlator(self, p):
        t, b, db = self.point(p)
        return 1 - b + 2 * t * db

    def at_critical(self):
        return self.point(self.p_max)


class QuadCurve(BlockCurve):
    """Simple quadrangulations, rational in ``s`` on ``[0, 1/2]``.

    ``t = (4/27) s^2 (3 - 4 s^2)^2`` makes ``B`` and ``B'`` polynomial in
    ``s`` and the correlator ``1 - B + 2tB' = (8/9) s^2 (3 - 2 s^2)``.
    """

    p_max = Fraction(1, 2)

    def point(self, p):
        w = p * p
        t = Fraction(4, 27) * w * (3 - 4 * w) ** 2 if isinstance(p, Rational) else 4 * w * (3 - 4 * w) ** 2 / 27
        b = 1 + 8 * w * (1 - 2 * w) / 3
        db = 6 / (3 - 4 * w) if not isinstance(p, Rational) else Fraction(6) / (3 - 4 * w)
        return t, b, db

    def correlator(self, p):
        w = p * p
        return Fraction(8, 9) * w * (3 - 2 * w) if isinstance(p, Rational) else 8 * w * (3 - 2 * w) / 9

    @staticmethod
    def parameter_at(u):
        """Closed-form ``s(u)`` for ``u >= 9/5``, as an mpmath number."""
        u = mp.mpf(u) if not isinstance(u, Rational) else mp.mpf(u.numerator) / u.denominator
        w = (3 - mp.sqrt(9 - 9 / u)) / 4
        return mp.sqrt(w)


class HypergeometricCurve(BlockCurve):
    """Curve traced by ``M_1(g) = lam (2F1(a, b; c; z) - 1) / z`` with ``z = scale g``.

    Counts whose term ratio is ``z (n + a + 1)(n + b + 1) / ((n + c + 1)(n + 2))``
    sum to this shifted Gauss function with ``lam = c / (a b)``; it stays
    fast up to ``z = 1``, where the 3F2 form does not.  At ``u = 1`` the
    substitution gives ``B(g M_1^2) = M_1``, so with ``g`` as parameter
    ``t = g M_1^2``, ``B = M_1`` and ``B' = M_1' / (M_1^2 + 2 g M_1 M_1')``.
    """

    def __init__(self, a, b, c, scale):
        self.a, self.b, self.c = mp.mpf(a), mp.mpf(b), mp.mpf(c)
        self.scale = mp.mpf(scale)
        self.p_max = 1 / self.scale
        self.lam = self.c / (self.a * self.b)

    def series(self, g):
        z = self.scale * g
        if z == 0:
            return mp.mpf(1)
        return self.lam * (mp.hyp2f1(self.a, self.b, self.c, z) - 1) / z

    def series_derivative(self, g):
        z = self.scale * g
        a, b, c = self.a, self.b, self.c
        if z == 0:
            return self.scale * self.lam * a * b * (a + 1) * (b + 1) / (2 * c * (c + 1))
        f = mp.hyp2f1(a, b, c, z)
        df = a * b / c * mp.hyp2f1(a + 1, b + 1, c + 1, z)
        return self.scale * self.lam * (df / z - (f - 1) / z ** 2)

    def u1_data(self):
        """``(g1, M1(g1), M1'(g1))``."""
        g1 = self.p_max
        return g1, self.series(g1), self.series_derivative(g1)

    def point(self, g):
        m = self.series(g)
        dm = self.series_derivative(g)
        return g * m * m, m, dm / (m * m + 2 * g * m * dm)


class SeriesCurve(BlockCurve):
    """Truncated block series ``B(t) = 1 + sum b_j t^j`` with ``t`` as parameter.

    Accuracy is that of the truncation at ``t``; keep ``t_cr`` inside the
    region where the partial sums have settled.
    """

    def __init__(self, b: Sequence, t_cr):
        self.b = [mp.mpf(int(x)) if isinstance(x, int) else mp.mpf(x) for x in b]
        self.p_max = mp.mpf(t_cr)

    def point(self, t):
        value = mp.mpf(0)
        slope = mp.mpf(0)
        for j in range(len(self.b), 0, -1):
            value = value * t + self.b[j - 1]
            slope = slope * t + j * self.b[j - 1]
        return t, 1 + t * value, slope


_CURVES: dict[str, Callable[[], BlockCurve]] = {
    "quad-simple-blocks": QuadCurve,
    # Cat(n) Cat(n+1): term ratio 16 (n + 1/2)(n + 3/2) / ((n + 2)(n + 3))
    "cubic-hamiltonian": lambda: HypergeometricCurve(-0.5, 0.5, 2, 16),
    "cubic-open-path": lambda: HypergeometricCurve(-0.5, 0.5, 2, 16),
    # Cat(n)^2: term ratio 16 (n + 1/2)^2 / (n + 2)^2
    "meander": lambda: HypergeometricCurve(-0.5, -0.5, 1, 16),
    "meander-q": lambda: HypergeometricCurve(-0.5, -0.5, 1, 16),
}


def block_curve(family: str) -> BlockCurve:
    """Closed-form curve for a family (``meander-q`` means ``q = 1``)."""
    family = _family(family)
    if family not in _CURVES:
        raise DataValidationError(
            f"{family} has no closed form; build a SeriesCurve from external counts")
    return _CURVES[family]()


def solve_tc(u, curve: BlockCurve, *, max_iter: int = 200, rtol: float = 1e-14):
    """Singular point ``t_c`` of the block tree and ``g_c(u)``, for ``u >= u_cr``.

    Solves ``u (1 - B(t) + 2t B'(t)) = 1`` by bisection in the curve
    parameter; the left side grows monotonically from 0 at ``t = 0``.

    Returns:
        ``(t_c, g_c)`` as mpmath numbers.

    Raises:
        OutsideAssumptionsError: ``u < u_cr`` (no solution below ``t_cr``).
        ConvergenceError: bracket not reduced to ``rtol`` in ``max_iter`` steps.
    """
    with mp.workdps(WORKING_DPS):
        u = _mpf(u)
        if u <= 0:
            raise OutsideAssumptionsError("u must be positive")
        target = 1 / u
        hi = _mpf(curve.p_max)
        top = _mpf(curve.correlator(curve.p_max))
        if target > top * (1 + mp.mpf(10) ** (-30)):
            raise OutsideAssumptionsError(f"u = {mp.nstr(u, 10)} is below u_cr = {mp.nstr(1 / top, 10)}")
        lo = mp.mpf(0)
        for _ in range(max_iter):
            mid = (lo + hi) / 2
            if curve.correlator(mid) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo <= rtol * hi:
                break
        else:
            raise ConvergenceError("bisection did not reach the requested tolerance")
        p = (lo + hi) / 2
        t, b, _ = curve.point(p)
        return t, t / (1 + u * (b - 1)) ** 2


def _mpf(x):
    if isinstance(x, Rational):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@dataclass
class CriticalData:
    """Critical constants of one family.

    ``t_cr`` is the radius of the block series, ``g_1`` that of ``M_1``.
    Amplitudes are filled in only where closed forms exist.
    """

    t_cr: object
    u_cr: object
    g_1: object
    M1_at_g1: object
    M1prime_at_g1: object
    g_c_at_ucr: object
    curve: BlockCurve | None = None
    source: str = "closed-form"
    amplitudes: dict = field(default_factory=dict)

    @property
    def B_at_tcr(self):
        # at u = 1 the block series at t_cr equals M_1(g_1)
        return self.M1_at_g1

    def g_cr_of_u(self, u):
        """Singularity location for ``u <= u_cr`` (driven by ``B`` at ``t_cr``)."""
        if u > self.u_cr:
            raise OutsideAssumptionsError("g_cr(u) is defined for u <= u_cr")
        return self.t_cr / (1 + u * (self.B_at_tcr - 1)) ** 2

    def g_c_of_u(self, u):
        """Singularity location for ``u >= u_cr`` (tree of blocks)."""
        if self.curve is None:
            raise DataValidationError("no block curve available for this data source")
        return solve_tc(u, self.curve)[1]

    def g_star(self, u):
        return self.g_cr_of_u(u) if u <= self.u_cr else self.g_c_of_u(u)


def critical_data(family: str) -> CriticalData:
    """Exact (quads) or 40-digit (cubic, open path, meander) critical data."""
    family = _family(family)
    curve = block_curve(family)
    if isinstance(curve, QuadCurve):
        g1, m1, dm1 = Fraction(1, 12), Fraction(4, 3), Fraction(16)
        t_cr, b, db = curve.at_critical()
        data = CriticalData(t_cr, ucrit_from_u1_data(g1, m1, dm1), g1, m1, dm1,
                            gc_at_ucrit(g1, m1, dm1), curve)
        data.amplitudes.update(K_B=db, B_at_tcr=b)
        return data
    with mp.workdps(WORKING_DPS):
        g1, m1, dm1 = curve.u1_data()
        return CriticalData(g1 * m1 * m1, ucrit_from_u1_data(g1, m1, dm1), g1, m1, dm1,
                            gc_at_ucrit(g1, m1, dm1), curve)


def critical_data_from_counts(counts: Sequence, p: int = 5, theta=None,
                              source: str = "external-file") -> CriticalData:
    """Estimated critical data from a finite table ``m_0, m_1, ...`` at ``u = 1``.

    ``g_1`` comes from the accelerated ratio sequence, ``u_cr`` from the
    extrapolated partial-sum sequence, and ``g_c(u_cr)`` from the partial
    sums at ``g_1`` (the least accurate of the three).
    """
    from .exponents import growth_rate_estimate, ucrit_extrapolate, SequenceWindow

    with mp.workdps(WORKING_DPS):
        values = [_mpf(c) for c in counts]
        g1 = growth_rate_estimate(SequenceWindow(values, "m"), p)
        u_cr = ucrit_extrapolate(values, g1, p=p, theta=theta)
        m1 = mp.fsum(c * g1 ** n for n, c in enumerate(values))
        dm1 = mp.fsum(n * c * g1 ** (n - 1) for n, c in enumerate(values) if n)
        return CriticalData(g1 * m1 * m1, u_cr, g1, m1, dm1, gc_at_ucrit(g1, m1, dm1),
                            None, source)


def cubic_ucrit_closed_form():
    pi = mp.pi
    return 9 * pi * (4 - pi) / (420 * pi - 81 * pi ** 2 - 512)


def cubic_gc_closed_form():
    pi = mp.pi
    return (420 * pi - 81 * pi ** 2 - 512) ** 2 / (576 * pi ** 2 * (10 - 3 * pi) ** 2)


def meander_ucrit_closed_form():
    pi = mp.pi
    return pi * (pi - 2) / (30 * pi - 3 * pi ** 2 - 64)


def meander_gc_closed_form():
    pi = mp.pi
    return (30 * pi - 3 * pi ** 2 - 64) ** 2 / (64 * pi ** 2 * (pi - 3) ** 2)


def quad_block_equation(t, b):
    """Residual of the algebraic equation satisfied by the quadrangulation block series."""
    return b ** 3 - b ** 2 - 18 * t * b + 27 * t ** 2 + 16 * t


def quad_map_equation(u, g, m):
    """Residual of the quartic satisfied by ``M_u(g)`` for quadrangulations."""
    return (27 * u ** 3 * g ** 2 * m ** 4
            + (1 - 18 * u ** 2 * g) * m ** 3
            - (3 - 2 * u + 2 * u ** 3 * g - 18 * u ** 2 * g) * m ** 2
            + (3 - 4 * u + u ** 2) * m
            - (1 - u) ** 2)


# -- exponent algebra -------------------------------------------------------


@dataclass(frozen=True)
class ExponentSet:
    """Liouville exponents for central charge ``c`` and a marked-point dimension.

    Values are sympy expressions for rational ``c`` and floats otherwise.
    """

    c: object
    gamma: object
    gamma_prime: object
    gamma_S: object
    gamma_S_prime: object
    Delta: object
    Delta_prime: object

    @property
    def alpha(self):
        return 1 - self.gamma_S

    @property
    def beta(self):
        return 2 * self.Delta - self.gamma_S

    def as_floats(self) -> dict:
        names = ("c", "gamma", "gamma_prime", "gamma_S", "gamma_S_prime", "Delta",
                 "Delta_prime", "alpha", "beta")
        return {name: float(getattr(self, name)) for name in names}


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction, sp.Rational))


def _sym(x):
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    return sp.Integer(x) if isinstance(x, int) else x


def lqg_exponents(c, Delta=0) -> ExponentSet:
    """Exponents of gamma-LQG at central charge ``c <= 1``.

    ``gamma_S`` is taken from its closed form in ``c``; the identity
    ``gamma_S = 1 - 4/gamma^2`` is left for the tests as a second route.
    """
    if c > 1:
        raise ValueError("central charge must be at most 1")
    if _exact(c) and _exact(Delta):
        c, Delta = _sym(c), _sym(Delta)
        sqrt, simplify = sp.sqrt, sp.radsimp
    else:
        c, Delta = float(c), float(Delta)
        sqrt, simplify = (lambda x: x ** 0.5), (lambda x: x)
    root_a, root_b = sqrt(25 - c), sqrt(1 - c)
    gamma = simplify((root_a - root_b) / sqrt(6))
    gamma_prime = simplify((root_a + root_b) / sqrt(6))
    gamma_S = simplify((c - 1 - sqrt((1 - c) * (25 - c))) / 12)
    gamma_S_prime = simplify((c - 1 + sqrt((1 - c) * (25 - c))) / 12)
    return ExponentSet(c, gamma, gamma_prime, gamma_S, gamma_S_prime, Delta,
                       simplify(dual_dimension(Delta, gamma_S)))


def kpz(x, gamma):
    """Quantum dimension for Euclidean ``x``, on either side of ``gamma = 2``."""
    if x < 0 or gamma <= 0:
        raise ValueError("need x >= 0 and gamma > 0")
    a = 2 / gamma - gamma / 2
    return ((4 * x + a * a) ** 0.5 - a) / gamma


def kpz_x(Delta, gamma):
    """Euclidean dimension from the quadratic KPZ relation."""
    g2 = gamma * gamma / 4
    return g2 * Delta * Delta + (1 - g2) * Delta


def dual_dimension(Delta, gamma_S):
    if gamma_S >= 1:
        raise ValueError("gamma_S must be below 1")
    return (Delta - gamma_S) / (1 - gamma_S)


def quantum_ball_density(A, t, gamma):
    """Density of ``t = -log(radius)`` for a quantum ball of size ``exp(-gamma A)``."""
    if A <= 0 or t <= 0 or gamma <= 0:
        raise ValueError("A, t and gamma must be positive")
    a = 2 / gamma - gamma / 2
    exponent = -(A - a * t) ** 2 / (2 * t)
    return A / math.sqrt(2 * math.pi * t ** 3) * (math.exp(exponent) if exponent > -745 else 0.0)


def quantum_ball_mass(A, gamma, tol: float = 1e-12):
    """Total mass of :func:`quantum_ball_density` over ``t > 0`` by quadrature."""
    if A <= 0 or gamma <= 0:
        raise ValueError("A and gamma must be positive")
    a = 2 / gamma - gamma / 2

    def density(t):
        return quantum_ball_density(A, t, gamma) if t > 0 else 0.0

    # split at the mode of the Gaussian part so quad sees the peak
    peak = A / abs(a) if a else A * A / 3
    pieces = [(0, peak), (peak, 10 * peak + 50), (10 * peak + 50, float("inf"))]
    total = 0.0
    for lo, hi in pieces:
        value, err = integrate.quad(density, lo, hi, epsabs=tol, epsrel=tol, limit=400)
        if err > 1e3 * max(tol, tol * abs(value)):
            raise ConvergenceError(f"quadrature error {err:.2e} on [{lo}, {hi}]")
        total += value
    return total


def sle_coupling(kappa):
    """``(gamma, gamma')`` with ``gamma^2 = min(kappa, 16/kappa)``."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if _exact(kappa):
        kappa = _sym(kappa)
        small, large = sp.Min(kappa, 16 / kappa), sp.Max(kappa, 16 / kappa)
        return sp.sqrt(small), sp.sqrt(large)
    small, large = min(kappa, 16 / kappa), max(kappa, 16 / kappa)
    return small ** 0.5, large ** 0.5


def meander_central_charge(q):
    """Central charge of meandric systems with weight ``q`` per loop."""
    if not 0 <= q <= 2:
        raise ValueError("q must lie in [0, 2]")
    if _exact(q):
        e = sp.acos(_sym(q) / 2) / sp.pi
        return sp.nsimplify(-1 - 6 * e ** 2 / (1 - e))
    e = math.acos(q / 2) / math.pi
    return -1 - 6 * e * e / (1 - e)


def quad_dimension(gamma):
    """Conjectured quadrangulation Hausdorff dimension, ``2 + gamma^2/2 + gamma/sqrt(6)``."""
    root6 = sp.sqrt(6) if isinstance(gamma, sp.Basic) else math.sqrt(6)
    return gamma * (2 / gamma + gamma / 2 + 1 / root6)


def hausdorff_dimensions(gamma_prime, d_gamma=None):
    """``(D, d_tilde, d_quad)`` in the dual phase ``gamma' > 2``.

    ``D`` is the dimension of the whole map, ``d_tilde`` that of a single
    large block (needs the dimension ``d_gamma`` of gamma-LQG), and
    ``d_quad`` the quadrangulation formula continued to ``gamma'``.
    """
    if gamma_prime <= 2:
        raise ValueError("gamma' must exceed 2")
    D = 1 / (1 - 4 / gamma_prime ** 2)
    d_tilde = None if d_gamma is None else gamma_prime ** 2 / 4 * d_gamma
    return D, d_tilde, quad_dimension(gamma_prime)
