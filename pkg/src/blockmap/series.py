"""Exact truncated power series and the block substitution scheme.

Coefficients live in one of three exact rings: rationals (``int`` or
``Fraction``), integer polynomials in the block weight ``u``, or integer
polynomials in ``u`` and the loop weight ``q``.  No floating point is used
anywhere in this module.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Ring",
    "Poly",
    "TruncatedSeries",
    "ring_of",
    "solve_tree_fixed_point",
    "extract_block_coefficients",
    "block_series",
    "weighted_map_series",
    "point_series",
    "correlator_from_blocks",
    "marked_block_series",
    "compose_outer",
    "extract_outer",
]


class Ring(enum.Enum):
    RATIONAL = "exact-rational"
    POLY_U = "integer-polynomial-in-u"
    POLY_UQ = "integer-polynomial-in-u-and-q"


_RING_VARIABLES = {Ring.POLY_U: ("u",), Ring.POLY_UQ: ("u", "q")}


class Poly:
    """Sparse polynomial with integer coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to non-zero
    integers.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "variables")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None,
                 variables: tuple[str, ...] = ("u",)):
        clean = {}
        for exps, c in (terms or {}).items():
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"polynomial coefficients must be integers, got {c!r}")
            if len(exps) != len(variables):
                raise ValueError(f"exponent {exps} does not match variables {variables}")
            if c:
                clean[tuple(exps)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "variables", tuple(variables))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: int, variables: tuple[str, ...] = ("u",)) -> Poly:
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], variables: tuple[str, ...] = ("u",)) -> Poly:
        """Univariate-in-u polynomial from ``[c_0, c_1, ...]``."""
        pad = (0,) * (len(variables) - 1)
        return cls({(k,) + pad: c for k, c in enumerate(coeffs)}, variables)

    @classmethod
    def monomial(cls, exps: tuple[int, ...], coeff: int = 1,
                 variables: tuple[str, ...] = ("u",)) -> Poly:
        return cls({tuple(exps): coeff}, variables)

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self, var: str = "u") -> int:
        """Degree in ``var``; ``-1`` for the zero polynomial."""
        i = self.variables.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def coefficient(self, *exps: int) -> int:
        return self._terms.get(tuple(exps), 0)

    def coefficients(self, var: str = "u") -> list:
        """Coefficient list in ``var``.

        For a univariate polynomial the entries are integers.  For the
        bivariate ring each entry is a ``Poly`` in the remaining variable.
        """
        i = self.variables.index(var)
        deg = self.degree(var)
        if len(self.variables) == 1:
            return [self._terms.get((k,), 0) for k in range(deg + 1)]
        rest = tuple(v for v in self.variables if v != var)
        parts: list[dict] = [{} for _ in range(deg + 1)]
        for e, c in self._terms.items():
            parts[e[i]][e[:i] + e[i + 1:]] = c
        return [Poly(p, rest) for p in parts]

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError(f"ring mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, int) or (isinstance(other, Fraction) and other.denominator == 1):
            return Poly.constant(int(other), self.variables)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, d: int) -> Poly:
        """Divide every coefficient by the integer ``d``; raises if inexact."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[e] = q
        return Poly(out, self.variables)

    def shift(self, var: str, k: int) -> Poly:
        """Multiply by ``var**k``."""
        i = self.variables.index(var)
        return Poly({e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in self._terms.items()},
                    self.variables)

    def __call__(self, **values):
        """Evaluate at the given variable values.

        Missing variables stay symbolic; the result is a ``Poly`` in the
        remaining variables in that case, otherwise a plain number of
        whatever type the values have (``Fraction``, ``mpf``, ...).
        """
        unknown = set(values) - set(self.variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        if keep:
            out: dict = {}
            for e, c in self._terms.items():
                w = c
                for i, v in enumerate(self.variables):
                    if v in values:
                        w = w * values[v] ** e[i]
                key = tuple(e[i] for i in keep)
                out[key] = out.get(key, 0) + w
            return Poly(out, tuple(self.variables[i] for i in keep))
        total = 0
        for e, c in self._terms.items():
            w = c
            for i, v in enumerate(self.variables):
                if e[i]:
                    w = w * values[v] ** e[i]
            total = total + w
        return total

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({(0,) * len(self.variables): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_of(value) -> Ring:
    if isinstance(value, Poly):
        for ring, names in _RING_VARIABLES.items():
            if value.variables == names:
                return ring
        raise ValueError(f"no ring for variables {value.variables}")
    if isinstance(value, (int, Fraction)):
        return Ring.RATIONAL
    raise TypeError(f"{type(value).__name__} is not an exact ring element")


def _zero(ring: Ring):
    return 0 if ring is Ring.RATIONAL else Poly({}, _RING_VARIABLES[ring])


def _one(ring: Ring):
    return 1 if ring is Ring.RATIONAL else Poly.constant(1, _RING_VARIABLES[ring])


def _normalize(value, ring: Ring):
    if ring is Ring.RATIONAL:
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        if isinstance(value, (int, Fraction)):
            return value
        raise TypeError(f"{value!r} is not a rational")
    if isinstance(value, Poly):
        if value.variables != _RING_VARIABLES[ring]:
            raise ValueError(f"ring mismatch: {value.variables} in {ring.value}")
        return value
    if isinstance(value, int) or (isinstance(value, Fraction) and value.denominator == 1):
        return Poly.constant(int(value), _RING_VARIABLES[ring])
    raise TypeError(f"{value!r} does not belong to {ring.value}")


def _is_zero(value) -> bool:
    return value.is_zero() if isinstance(value, Poly) else value == 0


class TruncatedSeries:
    """Power series known through order ``N`` with exact coefficients.

    Arithmetic between two series requires the same ring and the same
    truncation order.  Plain integers are accepted as scalars in every ring.
    """

    __slots__ = ("_coeffs", "ring")

    def __init__(self, coefficients: Iterable, order: int | None = None,
                 ring: Ring | None = None):
        coeffs = list(coefficients)
        if ring is None:
            ring = Ring.RATIONAL
            for c in coeffs:
                if isinstance(c, Poly):
                    ring = ring_of(c)
                    break
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = coeffs[:order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        object.__setattr__(self, "_coeffs", tuple(_normalize(c, ring) for c in coeffs))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring is other.ring and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.ring, self._coeffs))

    def __repr__(self):
        terms = [f"({c})*x^{n}" if isinstance(c, Poly) else f"{c}*x^{n}"
                 for n, c in enumerate(self._coeffs) if not _is_zero(c)]
        return f"TruncatedSeries[{self.ring.value}, N={self.order}](" + (" + ".join(terms) or "0") + ")"

    def _check(self, other: TruncatedSeries):
        if other.ring is not self.ring:
            raise ValueError(f"ring mismatch: {self.ring.value} vs {other.ring.value}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _new(self, coeffs) -> TruncatedSeries:
        return TruncatedSeries(coeffs, self.order, self.ring)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return self._new([a + b for a, b in zip(self._coeffs, other._coeffs)])
        c = list(self._coeffs)
        c[0] = c[0] + _normalize(other, self.ring)
        return self._new(c)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self._coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return self._new(_convolve(self._coeffs, other._coeffs, self.order, self.ring))
        other = _normalize(other, self.ring)
        return self._new([c * other for c in self._coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = self.one_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def one_like(self) -> TruncatedSeries:
        return self._new([_one(self.ring)])

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series known through order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[:order + 1], order, self.ring)

    def promote(self, ring: Ring) -> TruncatedSeries:
        """Re-express integer coefficients in a polynomial ring."""
        if ring is self.ring:
            return self
        if self.ring is not Ring.RATIONAL:
            raise ValueError(f"cannot promote {self.ring.value} to {ring.value}")
        return TruncatedSeries(self._coeffs, self.order, ring)

    def shift(self, k: int = 1) -> TruncatedSeries:
        """Multiply by ``g**k`` keeping the truncation order."""
        return self._new([_zero(self.ring)] * k + list(self._coeffs[:self.order + 1 - k]))

    def derivative(self) -> TruncatedSeries:
        """Formal derivative; the top coefficient is unknown, so the order drops by one."""
        return TruncatedSeries([n * c for n, c in enumerate(self._coeffs)][1:],
                               max(self.order - 1, 0), self.ring)

    def reciprocal(self) -> TruncatedSeries:
        c0 = self._coeffs[0]
        if self.ring is Ring.RATIONAL:
            if c0 == 0:
                raise ZeroDivisionError("constant term is zero")
            inv0 = Fraction(1, 1) / c0
        else:
            if c0 == 1:
                inv0 = 1
            elif c0 == -1:
                inv0 = -1
            else:
                raise ArithmeticError("constant term is not a unit of the polynomial ring")
        out = [_normalize(inv0, self.ring)]
        for n in range(1, self.order + 1):
            acc = _zero(self.ring)
            for k in range(1, n + 1):
                acc = acc + self._coeffs[k] * out[n - k]
            out.append(_normalize(-acc * inv0, self.ring))
        return self._new(out)

    def compose(self, inner: TruncatedSeries, allow_constant: bool = False) -> TruncatedSeries:
        """``self(inner(g))`` by Horner's rule.

        ``inner`` must have zero constant term; with ``allow_constant`` the
        series is treated as the exact finite polynomial it stores.
        """
        if not allow_constant:
            if not _is_zero(inner[0]):
                raise ValueError("composition needs an inner series without constant term")
            if self.order < inner.order:
                raise ValueError(f"outer series known through order {self.order}, need {inner.order}")
        ring = inner.ring
        outer = self.promote(ring) if self.ring is not ring else self
        result = TruncatedSeries([], inner.order, ring)
        for c in reversed(outer._coeffs):
            result = result * inner + c
        return result

    def evaluate(self, x):
        """Sum of the stored coefficients against powers of ``x``."""
        total = 0
        for c in reversed(self._coeffs):
            total = total * x + c
        return total

    def at(self, **values) -> list:
        """Evaluate each polynomial coefficient at the given weights."""
        return [c(**values) if isinstance(c, Poly) else c for c in self._coeffs]


def _convolve(a: Sequence, b: Sequence, order: int, ring: Ring) -> list:
    out = [_zero(ring)] * (order + 1)
    for i, x in enumerate(a):
        if _is_zero(x):
            continue
        for j in range(order + 1 - i):
            y = b[j]
            if not _is_zero(y):
                out[i + j] = out[i + j] + x * y
    return out


def _as_series(data, order: int | None = None) -> TruncatedSeries:
    if isinstance(data, TruncatedSeries):
        return data if order is None else data.truncate(order)
    return TruncatedSeries(data, order)


def solve_tree_fixed_point(phi: TruncatedSeries, N: int) -> TruncatedSeries:
    """Solve ``y = z * phi(y)`` coefficient by coefficient.

    The coefficient ``y_n`` equals ``[z^(n-1)] phi(y)``, which only involves
    ``y_1 .. y_(n-1)``.  A table of ``[z^m] y^k`` is grown alongside so the
    whole solve costs O(N^3) ring products.

    Args:
        phi: series in the tree variable, with non-zero constant term.
        N: requested order of ``y``.

    Returns:
        ``y`` through order ``N`` with ``y_0 = 0`` and ``y_1 = phi_0``.

    Raises:
        ValueError: if ``phi`` has zero constant term, ``N < 1`` or ``phi``
            is not known through order ``N - 1``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if _is_zero(phi[0]):
        raise ValueError("phi has zero constant term; the tree equation is degenerate")
    if phi.order < N - 1:
        raise ValueError(f"phi known through order {phi.order}, need {N - 1}")
    ring = phi.ring
    zero = _zero(ring)
    y = [zero] * (N + 1)
    # powers[k][m] = [z^m] y^k
    powers = [[_one(ring)] + [zero] * (N - 1)]
    for n in range(1, N + 1):
        m = n - 1
        for k in range(1, m + 1):
            if k == len(powers):
                powers.append([zero] * N)
            acc = zero
            for i in range(1, m - k + 2):
                if not _is_zero(y[i]):
                    acc = acc + y[i] * powers[k - 1][m - i]
            powers[k][m] = acc
        acc = zero
        for k in range(m + 1):
            acc = acc + phi[k] * powers[k][m]
        y[n] = acc
    return TruncatedSeries(y, N, ring)


def extract_block_coefficients(m1, N: int | None = None, *, check_sign: bool = True) -> list:
    """Block counts ``b_1..b_N`` from the unweighted map counts.

    Solves ``M_1(g) = B(g M_1(g)^2)`` triangularly: ``b_n`` appears at order
    ``n`` with coefficient one, so it is ``m_n`` minus the contribution of
    smaller blocks.

    Args:
        m1: ``m_0 .. m_N`` as a series or a list; ``m_0`` must be 1.
        N: order to solve through (defaults to the order of ``m1``).
        check_sign: reject negative block counts, which indicate corrupted
            input data.

    Returns:
        The list ``[b_1, ..., b_N]``.
    """
    m = _as_series(m1, N)
    if m[0] != 1:
        raise ValueError("m1 must have constant term 1")
    N = m.order
    t = (m * m).shift(1)
    powers = [None, t]
    for _ in range(2, N + 1):
        powers.append(powers[-1] * t)
    b = [_zero(m.ring)] * (N + 1)
    for n in range(1, N + 1):
        acc = m[n]
        for j in range(1, n):
            if not _is_zero(b[j]):
                acc = acc - b[j] * powers[j][n]
        if check_sign and not _nonnegative(acc):
            raise ValueError(f"inconsistent input: negative block count at order {n}")
        if isinstance(acc, Fraction) and acc.denominator != 1:
            raise ValueError(f"inconsistent input: non-integer block count at order {n}")
        b[n] = _normalize(acc, m.ring)
    return b[1:]


def _nonnegative(value) -> bool:
    return value.nonnegative() if isinstance(value, Poly) else value >= 0


def block_series(b: Sequence, N: int | None = None) -> TruncatedSeries:
    """``B(t) = 1 + sum_j b_j t^j`` from the list ``[b_1, ..., b_N]``."""
    N = len(b) if N is None else N
    if len(b) < N:
        raise ValueError(f"need {N} block coefficients, got {len(b)}")
    return TruncatedSeries([1] + list(b[:N]), N, _ring_of_list(b))


def _ring_of_list(values: Sequence) -> Ring:
    for v in values:
        if isinstance(v, Poly):
            return ring_of(v)
    return Ring.RATIONAL


def weighted_map_series(b: Sequence, N: int | None = None) -> TruncatedSeries:
    """Generating series ``M_u(g)`` with a weight ``u`` per block.

    Uses Lagrange inversion on ``T = g (1 + u A(T))^2`` with ``A = B - 1``::

        m_n(u) = 1/(2n+1) [t^n] (1 + u A(t))^(2n+1)
               = sum_k C(2n+1, k)/(2n+1) [t^n] A(t)^k u^k

    which gives the coefficient of each power of ``u`` as an exact integer.
    The triangular solve in :func:`solve_tree_fixed_point` reaches the same
    series and is kept as an independent check.

    Args:
        b: ``[b_1, ..., b_N]`` as integers, or as polynomials in ``q``
            (exponent tuples over ``("u", "q")`` with zero ``u`` degree).
        N: truncation order; defaults to ``len(b)``.

    Returns:
        Series over ``Ring.POLY_U`` (integer ``b``) or ``Ring.POLY_UQ``.
    """
    N = len(b) if N is None else N
    if len(b) < N:
        raise ValueError(f"need {N} block coefficients, got {len(b)}")
    base = _ring_of_list(b)
    if base is Ring.RATIONAL:
        if any(not isinstance(x, int) for x in b[:N]):
            raise TypeError("block coefficients must be integers")
        ring = Ring.POLY_U
    elif base is Ring.POLY_UQ:
        if any(isinstance(x, Poly) and x.degree("u") > 0 for x in b[:N]):
            raise ValueError("block coefficients may not depend on u")
        ring = Ring.POLY_UQ
    else:
        raise ValueError("block coefficients may not depend on u")
    variables = _RING_VARIABLES[ring]
    a = TruncatedSeries([0] + list(b[:N]), N, base)
    table = [a.one_like()]
    for _ in range(N):
        table.append(table[-1] * a)
    zero = _zero(ring)
    out = [_one(ring)]
    for n in range(1, N + 1):
        acc = zero
        for k in range(1, n + 1):
            coef = table[k][n]
            if _is_zero(coef):
                continue
            weight = _normalize(coef * comb(2 * n + 1, k), ring)
            acc = acc + weight.shift("u", k)
        acc = acc.exact_div(2 * n + 1)
        assert acc.degree("u") <= n
        out.append(acc)
    return TruncatedSeries(out, N, ring)


def point_series(m: TruncatedSeries) -> TruncatedSeries:
    """Apply ``2g d/dg + 1``: coefficient ``n`` becomes ``(2n+1) m_n``."""
    return TruncatedSeries([(2 * n + 1) * c for n, c in enumerate(m)], m.order, m.ring)


def correlator_from_blocks(b: Sequence, N: int | None = None) -> TruncatedSeries:
    """``C(t) = 1 - B(t) + 2t B'(t)``, i.e. ``c_j = (2j-1) b_j`` and ``c_0 = 0``."""
    N = len(b) if N is None else N
    if len(b) < N:
        raise ValueError(f"need {N} block coefficients, got {len(b)}")
    return TruncatedSeries([0] + [(2 * j - 1) * b[j - 1] for j in range(1, N + 1)], N,
                           _ring_of_list(b))


def marked_block_series(b: Sequence, N: int | None = None) -> TruncatedSeries:
    """``1 / (B(t) - 2t B'(t))``, the inverse of ``1 - C(t)``."""
    c = correlator_from_blocks(b, N)
    return (c.one_like() - c).reciprocal()


def compose_outer(C: TruncatedSeries, M: TruncatedSeries, a: int) -> TruncatedSeries:
    """``S(g) = M(g)^a * C(g M(g)^2)``.

    Args:
        C: outer series in ``t``; must be known at least through the order
            of ``M``.  Integer series are promoted to the ring of ``M``.
        M: map series (``M_u`` or ``M_1``).
        a: exponent in ``{0, 1, 2}``.
    """
    if a not in (0, 1, 2):
        raise ValueError("a must be 0, 1 or 2")
    if C.order < M.order:
        raise ValueError(f"C known through order {C.order}, need {M.order}")
    t = (M * M).shift(1)
    inner = C.truncate(M.order).promote(M.ring) if C.ring is not M.ring else C.truncate(M.order)
    s = inner.compose(t)
    return s * M ** a if a else s


def extract_outer(S: TruncatedSeries, M: TruncatedSeries, a: int) -> TruncatedSeries:
    """Solve ``S = M^a * C(g M^2)`` for ``C``, order by order.

    ``c_n`` enters ``[g^n] S`` with coefficient ``[g^n] M^a (g M^2)^n = 1``,
    so each step is a subtraction.
    """
    if a not in (0, 1, 2):
        raise ValueError("a must be 0, 1 or 2")
    if S.order != M.order:
        raise ValueError("S and M must share the truncation order")
    if M[0] != 1:
        raise ValueError("M must have constant term 1")
    N = M.order
    t = (M * M).shift(1)
    base = M ** a if a else M.one_like()
    terms = [base]
    for _ in range(N):
        terms.append(terms[-1] * t)
    c = [_zero(S.ring)] * (N + 1)
    for n in range(N + 1):
        acc = S[n]
        for j in range(n):
            if not _is_zero(c[j]):
                acc = acc - c[j] * terms[j][n]
        c[n] = acc
    return TruncatedSeries(c, N, S.ring)
