"""Exponent and limit estimates from finite coefficient tables.

For ``t_n ~ g^-n n^-delta`` the ratio sequence
``delta_n = n^2 (t_{n+2} t_n / t_{n+1}^2 - 1)`` tends to ``delta`` with
``1/n`` corrections.  The ``p``-th difference of ``n^p delta_n`` divided by
``p!`` removes them through order ``p``.  Iterated differences lose about
``p log10(N)`` digits, so everything runs at 60 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

import mpmath as mp

from .errors import OutsideAssumptionsError

__all__ = [
    "PRESETS",
    "WORKING_DPS",
    "SequenceWindow",
    "EstimateReport",
    "delta_sequence",
    "accelerate",
    "np_estimate",
    "growth_rate_estimate",
    "ucrit_sequence",
    "neville_limit",
    "ucrit_extrapolate",
    "evaluate_table",
]

WORKING_DPS = 60

# (N, p) settings used for the exponent curves of each family
PRESETS = {
    "quad": (50, 5),
    "quad-two-point": (35, 6),
    "cubic": (34, 5),
    "open": (30, 5),
    "meander": (20, 5),
}


def _mpf(x):
    if isinstance(x, mp.mpf):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@dataclass(frozen=True)
class SequenceWindow:
    """Coefficients ``t_0 .. t_N`` with an optional ``(log n)^eta`` premultiplier.

    ``t_0`` is carried for indexing only and never enters a ratio, so it may
    vanish (two-point series start at zero); ``t_1 .. t_N`` must be positive.
    """

    values: tuple
    label: str = ""
    log_power_eta: float = 0

    def __post_init__(self):
        with mp.workdps(WORKING_DPS):
            values = tuple(_mpf(v) for v in self.values)
        if any(v <= 0 for v in values[1:]):
            raise ValueError(f"{self.label or 'sequence'}: t_n must be positive for n >= 1")
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def truncated(self, N: int) -> SequenceWindow:
        if N > self.N:
            raise ValueError(f"window holds t_0..t_{self.N}, asked for N = {N}")
        return SequenceWindow(self.values[:N + 1], self.label, self.log_power_eta)

    def prepared(self) -> list:
        """``t_n (log n)^eta`` for ``n >= 1`` (``t_0`` unchanged)."""
        eta = self.log_power_eta
        if not eta:
            return list(self.values)
        with mp.workdps(WORKING_DPS):
            eta = _mpf(eta)
            return [self.values[0]] + [v * mp.log(n) ** eta
                                       for n, v in enumerate(self.values) if n]


@dataclass
class EstimateReport:
    """An ``(N, p)``-estimate with the sequences it came from.

    ``deltas[i]``, ``scaled[i]`` are indexed from ``n = 1``; ``accelerated[i]``
    as well, so the estimate is ``accelerated[N - 3 - p]``.
    """

    N: int
    p: int
    estimate: object
    deltas: list = field(repr=False)
    scaled: list = field(repr=False)
    accelerated: list = field(repr=False)
    target_description: str = ""

    def __float__(self):
        return float(self.estimate)


def delta_sequence(window: SequenceWindow | Sequence) -> list:
    """``delta_n`` for ``1 <= n <= N - 2``; the first entry is ``delta_1``.

    ``N = 2`` gives an empty list.
    """
    if not isinstance(window, SequenceWindow):
        window = SequenceWindow(tuple(window))
    t = window.prepared()
    if len(t) < 3:
        raise ValueError("need t_0..t_N with N >= 2")
    with mp.workdps(WORKING_DPS):
        out = []
        for n in range(1, len(t) - 2):
            if t[n + 1] == 0:
                raise ZeroDivisionError(f"t_{n + 1} = 0")
            out.append(n * n * (t[n + 2] * t[n] / t[n + 1] ** 2 - 1))
        return out


def accelerate(seq: Sequence, p: int, start: int = 1) -> list:
    """``(1/p!) Delta^p (n^p a_n)`` with ``seq[0]`` taken as ``a_start``.

    Exact on ``a_n`` polynomial in ``1/n`` of degree at most ``p``.  The
    result is indexed like the input (first entry at ``n = start``) and is
    ``p`` entries shorter.  ``p = 0`` returns the input.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    if p == 0:
        return list(seq)
    if len(seq) <= p:
        raise ValueError(f"need more than {p} terms, got {len(seq)}")
    if start < 1:
        raise ValueError("indices start at n = 1")
    weights = [(-1) ** (p - k) * comb(p, k) for k in range(p + 1)]
    with mp.workdps(WORKING_DPS):
        scaled = [mp.mpf(start + i) ** p * _mpf(a) for i, a in enumerate(seq)]
        norm = mp.mpf(factorial(p))
        return [mp.fsum(w * scaled[i + k] for k, w in enumerate(weights)) / norm
                for i in range(len(seq) - p)]


def np_estimate(window: SequenceWindow, N: int, p: int, target_description: str = "") -> EstimateReport:
    """The ``(N, p)``-estimate of ``delta``: accelerated ``delta_n`` at ``n = N - 2 - p``."""
    if not 1 <= p <= 10:
        raise ValueError("p must lie in 1..10")
    if N - 2 - p < 1:
        raise ValueError(f"N = {N} too small for p = {p}")
    window = window.truncated(N)
    deltas = delta_sequence(window)
    with mp.workdps(WORKING_DPS):
        scaled = [mp.mpf(n) ** p * d for n, d in enumerate(deltas, 1)]
    accelerated = accelerate(deltas, p)
    return EstimateReport(N, p, accelerated[-1], deltas, scaled, accelerated,
                          target_description or window.label)


def growth_rate_estimate(window: SequenceWindow, p: int = 5, N: int | None = None):
    """Radius ``g*`` from the accelerated ratios ``t_n / t_{n+1}``, ``n >= 1``."""
    if N is not None:
        window = window.truncated(N)
    t = window.values
    if window.N < p + 3:
        raise ValueError(f"need N >= p + 3 = {p + 3}")
    with mp.workdps(WORKING_DPS):
        ratios = [t[n] / t[n + 1] for n in range(1, len(t) - 1)]
        if any(r <= 0 for r in ratios):
            raise ValueError("non-positive ratio")
        return accelerate(ratios, p)[-1]


def ucrit_sequence(m1: Sequence, g1) -> list:
    """Critical-weight formula evaluated on the partial sums of ``M_1`` at ``g1``.

    Entry ``n - 1`` uses ``M_1^[n](g) = sum_{j <= n} m_j g^j``, for ``n >= 1``.
    """
    with mp.workdps(WORKING_DPS):
        g1 = _mpf(g1)
        if g1 <= 0:
            raise OutsideAssumptionsError("g1 must be positive")
        total = mp.mpf(0)
        slope = mp.mpf(0)
        out = []
        for n, m in enumerate(m1):
            m = _mpf(m)
            total += m * g1 ** n
            if n:
                slope += n * m * g1 ** (n - 1)
                num = total + 2 * g1 * slope
                den = total * (1 - total) + 2 * g1 * slope
                if den <= 0:
                    raise OutsideAssumptionsError(f"denominator not positive at n = {n}")
                out.append(num / den)
        return out


def neville_limit(xs: Sequence, ys: Sequence):
    """Value at ``x = 0`` of the interpolating polynomial through ``(xs, ys)``."""
    with mp.workdps(WORKING_DPS):
        xs = [_mpf(x) for x in xs]
        table = [_mpf(y) for y in ys]
        for k in range(1, len(xs)):
            for i in range(len(xs) - k):
                table[i] = (xs[i + k] * table[i] - xs[i] * table[i + 1]) / (xs[i + k] - xs[i])
        return table[0]


def ucrit_extrapolate(m1: Sequence, g1, p: int = 5, theta=None):
    """Limit of :func:`ucrit_sequence` by polynomial extrapolation in ``n^-theta``.

    The partial sums of ``M_1'`` miss a tail of order ``n^(2 - delta)`` when
    ``m_n ~ n^-delta``, so the corrections are powers of ``n^-theta`` with
    ``theta = delta - 2``.  Without ``theta`` it is estimated from the same
    table.  ``theta = 1`` reproduces :func:`accelerate` on the sequence.
    """
    if len(m1) < 10:
        raise ValueError("need at least 10 coefficients")
    seq = ucrit_sequence(m1, g1)
    if theta is None:
        N = len(m1) - 1
        q = min(p, N - 3)
        theta = np_estimate(SequenceWindow(tuple(m1)), N, q).estimate - 2
    theta = _mpf(theta)
    if theta <= 0:
        raise OutsideAssumptionsError("M1' diverges at g1 (theta <= 0)")
    if len(seq) <= p:
        raise ValueError("table too short for the requested order")
    with mp.workdps(WORKING_DPS):
        ns = range(len(seq) - p, len(seq) + 1)
        return neville_limit([mp.mpf(n) ** -theta for n in ns], [seq[n - 1] for n in ns])


def evaluate_table(series, u=1, q=None) -> list:
    """Numeric coefficients of a polynomial-coefficient series at ``u`` (and ``q``)."""
    values = {"u": _mpf(u)}
    if q is not None:
        values["q"] = _mpf(q)
    with mp.workdps(WORKING_DPS):
        out = []
        for c in series:
            if hasattr(c, "variables"):
                known = {k: v for k, v in values.items() if k in c.variables}
                c = c(**known)
            out.append(_mpf(c))
        return out
