"""Compiled inner loops for the brute-force arch and meander counts.

Every configuration is reduced to partner arrays on ``m = 2n`` points.  A
block count is the number of positions ``i`` at which some self-matched
interval ``[i..j]`` starts; that equals the number of blocks produced by the
recursive decomposition (each block is the core of a distinct interval, and
every closed interval starts where some block's interval starts).
"""

from __future__ import annotations

import numba as nb
import numpy as np


@nb.njit(cache=True)
def block_starts(partner, m):
    """Count starts of self-matched intervals.  ``partner[j] < 0`` never closes."""
    count = 0
    for i in range(m):
        hi = -1
        for j in range(i, m):
            p = partner[j]
            if p < i:
                break
            if p > hi:
                hi = p
            if hi == j:
                count += 1
                break
    return count


@nb.njit(cache=True)
def block_starts_pair(upper, lower, m):
    count = 0
    for i in range(m):
        hi = -1
        for j in range(i, m):
            p = upper[j]
            r = lower[j]
            if p < i or r < i:
                break
            if p > hi:
                hi = p
            if r > hi:
                hi = r
            if hi == j:
                count += 1
                break
    return count


@nb.njit(cache=True)
def loop_count(upper, lower, m, seen):
    for i in range(m):
        seen[i] = False
    loops = 0
    for start in range(m):
        if seen[start]:
            continue
        loops += 1
        x = start
        while True:
            seen[x] = True
            y = upper[x]
            seen[y] = True
            x = lower[y]
            if x == start:
                break
    return loops


@nb.njit(cache=True)
def _next_combination(comb, size, total):
    i = size - 1
    while i >= 0 and comb[i] == total - size + i:
        i -= 1
    if i < 0:
        return False
    comb[i] += 1
    for j in range(i + 1, size):
        comb[j] = comb[j - 1] + 1
    return True


@nb.njit(cache=True)
def arch_histogram(n, table, offsets, counts, bicolored, hist):
    """Histogram of block counts over all two-sided arch systems on 2n points.

    ``table[offsets[k] + r, :2k]`` holds the r-th non-crossing matching of
    2k points.  For each choice of the 2k points carrying upper arches, the
    upper and lower matchings are placed independently.
    """
    m = 2 * n
    partner = np.empty(m, np.int64)
    subset = np.empty(m, np.int64)
    rest = np.empty(m, np.int64)
    used = np.empty(m, np.bool_)
    ok_lower = np.empty(table.shape[0], np.bool_)
    for k in range(n + 1):
        a = 2 * k
        for t in range(a):
            subset[t] = t
        more = True
        while more:
            for t in range(m):
                used[t] = False
            for t in range(a):
                used[subset[t]] = True
            r = 0
            for t in range(m):
                if not used[t]:
                    rest[r] = t
                    r += 1
            lo_off = offsets[n - k]
            lo_cnt = counts[n - k]
            for il in range(lo_cnt):
                good = True
                if bicolored:
                    for t in range(m - a):
                        if (rest[t] - rest[table[lo_off + il, t]]) % 2 == 0:
                            good = False
                            break
                ok_lower[il] = good
            up_off = offsets[k]
            for iu in range(counts[k]):
                good = True
                if bicolored:
                    for t in range(a):
                        if (subset[t] - subset[table[up_off + iu, t]]) % 2 == 0:
                            good = False
                            break
                if not good:
                    continue
                for t in range(a):
                    partner[subset[t]] = subset[table[up_off + iu, t]]
                for il in range(lo_cnt):
                    if not ok_lower[il]:
                        continue
                    for t in range(m - a):
                        partner[rest[t]] = rest[table[lo_off + il, t]]
                    hist[block_starts(partner, m)] += 1
            if a == 0 or a == m:
                more = False
            else:
                more = _next_combination(subset, a, m)
    return hist


@nb.njit(cache=True)
def open_histogram(n, matchings, hist):
    """Histogram over open arch systems: each point sits on the top or bottom
    side of the segment, and the chosen sides are matched without crossing
    on the circle that runs along the top left to right and back along the
    bottom.  Arches joining opposite sides wind around the right end and
    never belong to a self-matched interval.
    """
    m = 2 * n
    order = np.empty(m, np.int64)
    side = np.empty(m, np.int64)
    partner = np.empty(m, np.int64)
    for mask in range(1 << m):
        r = 0
        for p in range(m):
            side[p] = (mask >> p) & 1
            if side[p] == 0:
                order[r] = p
                r += 1
        for p in range(m - 1, -1, -1):
            if side[p] == 1:
                order[r] = p
                r += 1
        for row in range(matchings.shape[0]):
            for t in range(m):
                p = order[t]
                q = order[matchings[row, t]]
                partner[p] = q if side[p] == side[q] else -1
            hist[block_starts(partner, m)] += 1
    return hist


@nb.njit(cache=True)
def meander_histogram(n, matchings, hist):
    """Joint histogram of (blocks, loops) over all upper/lower matching pairs."""
    m = 2 * n
    seen = np.empty(m, np.bool_)
    count = matchings.shape[0]
    for iu in range(count):
        upper = matchings[iu]
        for il in range(count):
            lower = matchings[il]
            hist[block_starts_pair(upper, lower, m), loop_count(upper, lower, m, seen)] += 1
    return hist
