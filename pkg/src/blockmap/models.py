"""Map families, arch and meander systems, and brute-force oracles.

Arch systems encode Hamiltonian cycles on cubic maps: 2n points on a line,
each carrying one arch drawn above or below, with no crossings on either
side.  Meandric systems carry one arch above and one below at every point.
Block counts obtained here by exhaustive enumeration are the independent
check on the generating-function route in :mod:`blockmap.series`.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceededError, DataValidationError
from .series import Poly, TruncatedSeries

__all__ = [
    "FAMILIES",
    "ALIASES",
    "DataValidationError",
    "CapExceededError",
    "ModelSpec",
    "model_spec",
    "catalan",
    "closed_form_count",
    "noncrossing_matchings",
    "ArchSystem",
    "MeanderSystem",
    "UnionFind",
    "enumerate_arch_systems",
    "enumerate_meander_systems",
    "connected_components",
    "is_irreducible",
    "block_decomposition",
    "open_core",
    "brute_force_weighted_counts",
    "load_external_counts",
    "u1_counts",
]

FAMILIES = (
    "quad-simple-blocks",
    "cubic-hamiltonian",
    "cubic-open-path",
    "bicubic-hamiltonian",
    "meander",
    "meander-q",
)

ALIASES = {
    "quad": "quad-simple-blocks",
    "cubic": "cubic-hamiltonian",
    "open": "cubic-open-path",
    "open-path": "cubic-open-path",
    "bicubic": "bicubic-hamiltonian",
    "meander": "meander",
    "meander-q": "meander-q",
}

ARCH_CAP = 12
MEANDER_CAP = 10


def _family(name: str) -> str:
    family = ALIASES.get(name, name)
    if family not in FAMILIES:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(set(ALIASES) | set(FAMILIES))}")
    return family


@dataclass(frozen=True)
class ModelSpec:
    """Descriptor tying a family to its data source and correlator rule.

    ``outer_power`` is the exponent ``a`` in ``S_u = M_u^a C(g M_u^2)`` for
    the family's natural two-point function; ``None`` where it is not used.
    """

    family: str
    count_source: str
    has_blocks: bool = True
    outer_power: int | None = None
    central_charge: object = None
    default_order: int = 30

    @property
    def has_closed_form(self) -> bool:
        return self.family != "bicubic-hamiltonian"


def model_spec(name: str, count_source: str | None = None) -> ModelSpec:
    family = _family(name)
    closed = family != "bicubic-hamiltonian"
    source = count_source or ("closed-form" if closed else "external-file")
    if source not in ("closed-form", "brute-force", "external-file"):
        raise ValueError(f"unknown count source {source!r}")
    if source == "closed-form" and not closed:
        raise ValueError(f"{family} has no closed form")
    if family == "meander-q" and source == "closed-form":
        source = "brute-force"
    table = {
        "quad-simple-blocks": (0, 0),
        "cubic-hamiltonian": (2, -2),
        "cubic-open-path": (1, -2),
        "bicubic-hamiltonian": (None, -1),
        "meander": (None, -2),
        "meander-q": (None, None),
    }
    power, charge = table[family]
    order = 50 if source == "closed-form" else 30
    return ModelSpec(family, source, True, power, charge, order)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def closed_form_count(family: str, n: int) -> int:
    """Unweighted count ``m_n`` of the family at size ``n``.

    Raises:
        ValueError: for bicubic maps, whose counts have no closed form.
    """
    family = _family(family)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    if family == "quad-simple-blocks":
        return 2 * 3 ** n * catalan(n) // (n + 2)
    if family == "cubic-hamiltonian":
        return catalan(n) * catalan(n + 1)
    if family == "cubic-open-path":
        return 4 ** n * catalan(n)
    if family in ("meander", "meander-q"):
        return catalan(n) ** 2
    raise ValueError(f"{family} has no closed form; use brute force or an external file")


def noncrossing_matchings(m: int) -> Iterator[tuple[int, ...]]:
    """All non-crossing perfect matchings of ``m`` points as partner tuples.

    Point 0 pairs with an odd position ``j``; the points strictly inside and
    those after ``j`` are matched recursively.  The order is deterministic.
    """
    if m % 2:
        raise ValueError("need an even number of points")
    yield from _matchings(0, m)


def _matchings(lo: int, hi: int):
    if lo == hi:
        yield ()
        return
    for j in range(lo + 1, hi, 2):
        for inner in _matchings(lo + 1, j):
            for outer in _matchings(j + 1, hi):
                yield (j,) + inner + (lo,) + outer


@functools.lru_cache(maxsize=None)
def _matching_table(k: int) -> np.ndarray:
    rows = list(noncrossing_matchings(2 * k))
    table = np.zeros((len(rows), max(2 * k, 1)), dtype=np.int64)
    for r, row in enumerate(rows):
        table[r, :2 * k] = row
    return table


ABOVE, BELOW = 1, -1
_SIDE_NAMES = {"above": ABOVE, "below": BELOW, "top": ABOVE, "bottom": BELOW}


def _crossing(chords: list[tuple[int, int]]) -> bool:
    chords = sorted(chords)
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1:]:
            if c > b:
                break
            if a < c < b < d:
                return True
    return False


@dataclass(frozen=True)
class ArchSystem:
    """Arch system on ``2n`` points.

    ``partner[p]`` is the point matched to ``p`` (0-based) and ``side[p]``
    is +1 when the arch leaves ``p`` upward, -1 downward.  Regular systems
    have both ends of each arch on the same side.  Open systems may also
    contain winding arches, which leave one end upward and the other
    downward by going around the right end of the segment.
    """

    partner: tuple[int, ...]
    side: tuple[int, ...]
    bicolored: bool = False
    open: bool = False

    def __post_init__(self):
        m = len(self.partner)
        if m % 2 or len(self.side) != m:
            raise ValueError("need an even number of points with one side each")
        for p, q in enumerate(self.partner):
            if not 0 <= q < m or q == p or self.partner[q] != p:
                raise ValueError("partner is not a perfect matching")
            if self.side[p] not in (ABOVE, BELOW):
                raise ValueError("sides must be +1 or -1")
            if self.side[p] != self.side[q] and not self.open:
                raise ValueError("winding arch in a closed system")
            if self.bicolored and (p - q) % 2 == 0:
                raise ValueError("bicolored arch joins points of the same color")
        if _crossing(self._chords()):
            raise ValueError("arches cross")

    def _chords(self) -> list[tuple[int, int]]:
        # Position on the circle: top side left to right, then bottom right to left.
        m = len(self.partner)

        def pos(p):
            return p if self.side[p] == ABOVE else 2 * m - 1 - p

        return [tuple(sorted((pos(p), pos(q)))) for p, q in enumerate(self.partner) if p < q]

    @classmethod
    def from_pairs(cls, pairs, bicolored: bool = False, open: bool = False) -> ArchSystem:
        """Build from 1-based ``(a, b, side)`` triples.

        ``side`` is ``"above"`` or ``"below"``, or for a winding arch a pair
        such as ``("above", "below")`` giving the side at ``a`` and at ``b``.
        """
        m = 2 * len(pairs)
        partner = [-1] * m
        side = [0] * m
        for a, b, s in pairs:
            a, b = a - 1, b - 1
            if not (0 <= a < m and 0 <= b < m) or partner[a] >= 0 or partner[b] >= 0:
                raise ValueError(f"bad arch ({a + 1}, {b + 1})")
            sa, sb = (s, s) if isinstance(s, str) else s
            partner[a], partner[b] = b, a
            side[a], side[b] = _SIDE_NAMES[sa], _SIDE_NAMES[sb]
        return cls(tuple(partner), tuple(side), bicolored, open)

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    @property
    def pairs(self) -> list[tuple[int, int, str]]:
        out = []
        for p, q in enumerate(self.partner):
            if p < q:
                if self.side[p] != self.side[q]:
                    label = "winding"
                else:
                    label = "above" if self.side[p] == ABOVE else "below"
                out.append((p + 1, q + 1, label))
        return out

    def is_winding(self, p: int) -> bool:
        return self.side[p] != self.side[self.partner[p]]

    def _closes(self, p: int, lo: int, hi: int) -> bool:
        return lo <= self.partner[p] <= hi and not self.is_winding(p)

    def restrict(self, points: Sequence[int]) -> ArchSystem:
        index = {p: i for i, p in enumerate(points)}
        partner = tuple(index[self.partner[p]] for p in points)
        side = tuple(self.side[p] for p in points)
        is_open = self.open and any(self.is_winding(p) for p in points)
        return ArchSystem(partner, side, self.bicolored, is_open)


@dataclass(frozen=True)
class MeanderSystem:
    """Upper and lower non-crossing matchings on the same ``2n`` points."""

    upper: tuple[int, ...]
    lower: tuple[int, ...]

    def __post_init__(self):
        m = len(self.upper)
        if m % 2 or len(self.lower) != m:
            raise ValueError("need matchings of the same even size")
        for match in (self.upper, self.lower):
            for p, q in enumerate(match):
                if not 0 <= q < m or q == p or match[q] != p:
                    raise ValueError("not a perfect matching")
            if _crossing([(p, q) for p, q in enumerate(match) if p < q]):
                raise ValueError("arches cross")

    @classmethod
    def from_pairs(cls, upper, lower) -> MeanderSystem:
        """Build from two lists of 1-based pairs."""
        return cls(_partner_from_pairs(upper), _partner_from_pairs(lower))

    @property
    def n(self) -> int:
        return len(self.upper) // 2

    def _closes(self, p: int, lo: int, hi: int) -> bool:
        return lo <= self.upper[p] <= hi and lo <= self.lower[p] <= hi

    def restrict(self, points: Sequence[int]) -> MeanderSystem:
        index = {p: i for i, p in enumerate(points)}
        return MeanderSystem(tuple(index[self.upper[p]] for p in points),
                             tuple(index[self.lower[p]] for p in points))


def _partner_from_pairs(pairs) -> tuple[int, ...]:
    m = 2 * len(pairs)
    partner = [-1] * m
    for a, b in pairs:
        a, b = a - 1, b - 1
        if not (0 <= a < m and 0 <= b < m) or partner[a] >= 0 or partner[b] >= 0:
            raise ValueError(f"bad arch ({a + 1}, {b + 1})")
        partner[a], partner[b] = b, a
    return tuple(partner)


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self._parent = list(range(size))
        self._size = [1] * size
        self.components = size

    def find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        self.components -= 1
        return True


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds the enumeration cap {cap}")


def enumerate_arch_systems(n: int, bicolored: bool = False, open: bool = False,
                           cap: int = ARCH_CAP) -> Iterator[ArchSystem]:
    """Every arch system on ``2n`` points exactly once.

    Closed systems are listed by the number of upper arches, then the set
    of points carrying them (lexicographic), then the upper and lower
    matchings in :func:`noncrossing_matchings` order.  Open systems are
    listed by the top/bottom choice at each point (as a bit mask) and then
    the matching along the boundary circle.
    """
    _check_cap(n, cap)
    m = 2 * n
    if open:
        matchings = list(noncrossing_matchings(m))
        for mask in range(1 << m):
            side = tuple(BELOW if (mask >> p) & 1 else ABOVE for p in range(m))
            order = [p for p in range(m) if side[p] == ABOVE]
            order += [p for p in reversed(range(m)) if side[p] == BELOW]
            for row in matchings:
                partner = [0] * m
                for t, p in enumerate(order):
                    partner[p] = order[row[t]]
                if bicolored and any((p - q) % 2 == 0 for p, q in enumerate(partner)):
                    continue
                yield ArchSystem(tuple(partner), side, bicolored, True)
        return
    for k in range(n, -1, -1):
        ups = list(noncrossing_matchings(2 * k))
        lows = list(noncrossing_matchings(m - 2 * k))
        for subset in combinations(range(m), 2 * k):
            rest = [p for p in range(m) if p not in subset]
            for up in ups:
                for low in lows:
                    partner = [0] * m
                    side = [ABOVE] * m
                    for t, p in enumerate(subset):
                        partner[p] = subset[up[t]]
                    for t, p in enumerate(rest):
                        partner[p] = rest[low[t]]
                        side[p] = BELOW
                    if bicolored and any((p - q) % 2 == 0 for p, q in enumerate(partner)):
                        continue
                    yield ArchSystem(tuple(partner), tuple(side), bicolored, False)


def enumerate_meander_systems(n: int, cap: int = MEANDER_CAP) -> Iterator[MeanderSystem]:
    _check_cap(n, cap)
    matchings = list(noncrossing_matchings(2 * n))
    for up in matchings:
        for low in matchings:
            yield MeanderSystem(up, low)


def connected_components(system: MeanderSystem) -> int:
    """Number of loops formed by the upper and lower arches together."""
    uf = UnionFind(len(system.upper))
    for p in range(len(system.upper)):
        uf.union(p, system.upper[p])
        uf.union(p, system.lower[p])
    return uf.components


def _max_closed_end(system, i: int, lo: int, hi: int) -> int:
    """Largest ``j <= hi`` with ``[i..j]`` self-matched, or ``-1``."""
    best = -1
    reach = i
    for j in range(i, hi + 1):
        if not system._closes(j, i, hi):
            break
        reach = max(reach, _far_end(system, j))
        if reach == j:
            best = j
    return best


def _far_end(system, p: int) -> int:
    if isinstance(system, MeanderSystem):
        return max(system.upper[p], system.lower[p])
    return system.partner[p]


def _maximal_pieces(system, lo: int, hi: int, first: int) -> list[tuple[int, int]]:
    pieces = []
    i = first
    while i <= hi:
        j = _max_closed_end(system, i, lo, hi)
        if j >= 0 and (j - i < hi - lo or i > lo or first == lo):
            pieces.append((i, j))
            i = j + 1
        else:
            i += 1
    return pieces


def _size(system) -> int:
    return len(system.partner) if isinstance(system, ArchSystem) else len(system.upper)


def _interval_starts(system) -> int:
    m = _size(system)
    return sum(_max_closed_end(system, i, 0, m - 1) >= 0 for i in range(m))


def is_irreducible(system) -> bool:
    """True when no proper interval of points is matched within itself.

    For meanders both matchings must close simultaneously.  For open arch
    systems the whole segment also counts, since the irreducible part of
    an open configuration keeps at least one winding arch.
    """
    m = _size(system)
    if m == 0:
        raise ValueError("empty system")
    if isinstance(system, ArchSystem) and system.open:
        return _interval_starts(system) == 0
    # a closed prefix forces a closed suffix, so one start means no proper interval
    return _interval_starts(system) == 1


def block_decomposition(system) -> list:
    """Split a system into its irreducible blocks.

    Within an interval, the maximal self-matched sub-intervals that do not
    start at its first point are cut out; what remains is one irreducible
    block (the one holding the first arch), and every piece cut out is
    decomposed the same way.  For an open arch system, pieces may start
    anywhere, the remaining winding core is not a block, and the block
    sizes plus the core size add up to ``n``.
    """
    m = _size(system)
    blocks: list = []
    if isinstance(system, ArchSystem) and system.open:
        for lo, hi in _maximal_pieces(system, 0, m - 1, 0):
            _decompose(system, lo, hi, blocks)
        return blocks
    _decompose(system, 0, m - 1, blocks)
    return blocks


def _decompose(system, lo: int, hi: int, blocks: list):
    pieces = _maximal_pieces(system, lo, hi, lo + 1)
    cut = set()
    for a, b in pieces:
        cut.update(range(a, b + 1))
    core = [p for p in range(lo, hi + 1) if p not in cut]
    blocks.append(_regular(system.restrict(core)))
    for a, b in pieces:
        _decompose(system, a, b, blocks)


def _regular(system):
    if isinstance(system, ArchSystem) and system.open:
        return ArchSystem(system.partner, system.side, system.bicolored, False)
    return system


def open_core(system: ArchSystem) -> ArchSystem | None:
    """The winding core of an open system (``None`` when it is empty)."""
    if not system.open:
        raise ValueError("not an open system")
    m = _size(system)
    cut = set()
    for a, b in _maximal_pieces(system, 0, m - 1, 0):
        cut.update(range(a, b + 1))
    core = [p for p in range(m) if p not in cut]
    return system.restrict(core) if core else None


def _arch_table(n: int):
    tables = [_matching_table(k) for k in range(n + 1)]
    width = max(2 * n, 1)
    offsets = np.zeros(n + 1, dtype=np.int64)
    counts = np.zeros(n + 1, dtype=np.int64)
    rows = []
    total = 0
    for k, t in enumerate(tables):
        offsets[k] = total
        counts[k] = t.shape[0]
        block = np.zeros((t.shape[0], width), dtype=np.int64)
        block[:, :t.shape[1]] = t
        rows.append(block)
        total += t.shape[0]
    return np.vstack(rows), offsets, counts


@functools.lru_cache(maxsize=None)
def _brute_force_row(family: str, n: int):
    from . import _kernels

    if n == 0:
        return np.ones((1, 1), dtype=np.int64)
    if family in ("cubic-hamiltonian", "bicubic-hamiltonian"):
        table, offsets, counts = _arch_table(n)
        hist = np.zeros(n + 1, dtype=np.int64)
        _kernels.arch_histogram(n, table, offsets, counts,
                                family == "bicubic-hamiltonian", hist)
        return hist
    if family == "cubic-open-path":
        hist = np.zeros(n + 1, dtype=np.int64)
        _kernels.open_histogram(n, _matching_table(n), hist)
        return hist
    hist = np.zeros((n + 1, n + 1), dtype=np.int64)
    _kernels.meander_histogram(n, _matching_table(n), hist)
    return hist


def brute_force_weighted_counts(family: str, n_max: int, cap: int | None = None) -> list[Poly]:
    """Exhaustive ``sum u^blocks`` (times ``q^loops`` for meander-q) per size.

    Returns:
        Polynomials for ``n = 0 .. n_max``.  Open-path entries weight only
        the blocks cut out of the winding core.

    Raises:
        CapExceededError: ``n_max`` above the cap (12 arches, or 10 per side
            for meanders, unless ``cap`` says otherwise).
        ValueError: for quadrangulations, which have no brute-force oracle.
    """
    family = _family(family)
    if family == "quad-simple-blocks":
        raise ValueError("no brute-force enumerator for quadrangulations; the closed forms serve as oracle")
    meander = family in ("meander", "meander-q")
    _check_cap(n_max, cap if cap is not None else (MEANDER_CAP if meander else ARCH_CAP))
    out = []
    for n in range(n_max + 1):
        hist = _brute_force_row(family, n)
        if family == "meander-q":
            if n == 0:
                out.append(Poly.constant(1, ("u", "q")))
                continue
            terms = {(b, k): int(hist[b, k]) for b in range(n + 1) for k in range(n + 1)}
            out.append(Poly(terms, ("u", "q")))
        else:
            if hist.ndim == 2:
                hist = hist.sum(axis=1)
            out.append(Poly.from_coefficients([int(x) for x in hist]))
    return out


_LINE = re.compile(r"^\s*(\d+)\s+(-?\d+)(?:\s+(-?\d+))?\s*$")


def load_external_counts(path, family: str | None = None, check_upto: int | None = None) -> list:
    """Read a coefficient file and check it against brute force.

    Each non-comment line holds ``n value`` (plain counts) or ``n k value``
    (counts with ``k`` loops).  ``n`` must increase strictly within each
    ``k``, and plain files must list every ``n`` from 1 on.

    Args:
        path: file to read.
        family: used to pick the brute-force oracle for the overlap check;
            ``None`` skips the check.
        check_upto: largest ``n`` compared against brute force (defaults to
            10 for bicubic maps and 8 otherwise).

    Returns:
        ``[m_0, m_1, ...]`` with ``m_0 = 1``; entries are integers for plain
        files and polynomials in ``q`` (over ``("u", "q")``) for resolved ones.
    """
    text = Path(path).read_text(encoding="utf-8")
    plain: dict[int, int] = {}
    resolved: dict[int, dict[int, int]] = {}
    last: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE.match(line)
        if not match:
            raise DataValidationError(f"{path}:{lineno}: cannot parse {raw!r}")
        n = int(match.group(1))
        if match.group(3) is None:
            k, value, store = None, int(match.group(2)), plain
        else:
            k, value, store = int(match.group(2)), int(match.group(3)), resolved
        if value < 0:
            raise DataValidationError(f"{path}:{lineno}: negative count")
        if n <= last.get(k, -1):
            raise DataValidationError(f"{path}:{lineno}: n must increase within each k")
        last[k] = n
        if k is None:
            plain[n] = value
        else:
            store.setdefault(n, {})[k] = value
    if plain and resolved:
        raise DataValidationError(f"{path}: mixes plain and component-resolved rows")
    if not plain and not resolved:
        raise DataValidationError("insufficient data")
    if plain:
        top = max(plain)
        if sorted(n for n in plain if n > 0) != list(range(1, top + 1)):
            raise DataValidationError(f"{path}: missing sizes between 1 and {top}")
        if plain.get(0, 1) != 1:
            raise DataValidationError(f"{path}: m_0 must be 1")
        table: list = [1] + [plain[n] for n in range(1, top + 1)]
    else:
        top = max(resolved)
        if sorted(n for n in resolved if n > 0) != list(range(1, top + 1)):
            raise DataValidationError(f"{path}: missing sizes between 1 and {top}")
        table = [Poly.constant(1, ("u", "q"))]
        for n in range(1, top + 1):
            table.append(Poly({(0, k): v for k, v in resolved[n].items()}, ("u", "q")))
    if family is not None:
        _validate_overlap(table, _family(family), check_upto)
    return table


def _validate_overlap(table: list, family: str, check_upto: int | None):
    if family == "quad-simple-blocks":
        expected = [closed_form_count(family, n) for n in range(len(table))]
    else:
        limit = check_upto if check_upto is not None else (10 if family == "bicubic-hamiltonian" else 8)
        limit = min(limit, len(table) - 1)
        rows = brute_force_weighted_counts(
            "meander-q" if isinstance(table[0], Poly) else family, limit)
        expected = [_at_u1(r) for r in rows]
    for n, want in enumerate(expected):
        if n >= len(table):
            break
        got = table[n]
        if got != want:
            raise DataValidationError(f"size {n}: file has {got}, enumeration gives {want}")


def _at_u1(value):
    """Set ``u = 1`` but keep the ``("u", "q")`` variables of q-polynomials."""
    if not isinstance(value, Poly):
        return value
    if value.variables == ("u",):
        return value(u=1)
    out: dict = {}
    for (_, k), c in value.terms.items():
        out[(0, k)] = out.get((0, k), 0) + c
    return Poly(out, ("u", "q"))


def u1_counts(family: str, N: int, path=None, q=None) -> TruncatedSeries:
    """Unweighted counts ``m_0..m_N`` as a series.

    Closed forms are used where they exist; bicubic maps need ``path``.  For
    meander-q the coefficients are polynomials in ``q`` (from ``path`` or
    brute force), evaluated at ``q`` when it is given as an integer.
    """
    family = _family(family)
    if path is not None:
        table = load_external_counts(path, family)
        if len(table) <= N:
            raise DataValidationError(f"file holds sizes up to {len(table) - 1}, need {N}")
        table = table[:N + 1]
    elif family == "meander-q":
        table = [_at_u1(r) for r in brute_force_weighted_counts(family, N)]
    elif family == "bicubic-hamiltonian":
        raise DataValidationError(
            "bicubic maps have no closed form; supply an external coefficient file "
            "(or use brute force, which stops at 12 arches)")
    else:
        table = [closed_form_count(family, n) for n in range(N + 1)]
    if q is not None:
        table = [t(u=1, q=q) if isinstance(t, Poly) else t for t in table]
    return TruncatedSeries(table, N)
