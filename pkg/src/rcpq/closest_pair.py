"""Exact closest pair of a planar point set.

Both routines return the same answer, including on ties: the pair of minimum
squared distance, and among those the lexicographically smallest pair after
ordering each pair so its smaller point comes first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .geometry import Point, as_points

_CUTOFF = 16
_INF_KEY = (math.inf, None)


@dataclass(frozen=True)
class PairResult:
    pair: Optional[tuple[Point, Point]]
    dist: float

    @property
    def found(self) -> bool:
        return self.pair is not None


NO_PAIR = PairResult(None, math.inf)


def _result(best) -> PairResult:
    d2, pair = best
    if pair is None:
        return NO_PAIR
    return PairResult(pair, math.sqrt(d2))


def _brute_sorted(pts: list[Point], lo: int, hi: int, best):
    # pts[lo:hi] sorted lexicographically, so (pts[i], pts[j]) with i < j is ordered.
    for i in range(lo, hi):
        px, py = p = pts[i]
        for j in range(i + 1, hi):
            q = pts[j]
            dx = q[0] - px
            dy = q[1] - py
            d2 = dx * dx + dy * dy
            if d2 < best[0] or (d2 == best[0] and (p, q) < best[1]):
                best = (d2, (p, q))
    return best


def _recurse(pts: list[Point], lo: int, hi: int, best):
    """Closest pair of pts[lo:hi]; returns (best, the slice re-sorted by y)."""
    if hi - lo <= _CUTOFF:
        best = _brute_sorted(pts, lo, hi, best)
        return best, sorted(pts[lo:hi], key=lambda p: (p[1], p[0]))
    mid = (lo + hi) // 2
    mid_x = pts[mid][0]
    best, left = _recurse(pts, lo, mid, best)
    best, right = _recurse(pts, mid, hi, best)

    by_y = []
    i = j = 0
    while i < len(left) and j < len(right):
        if (right[j][1], right[j][0]) < (left[i][1], left[i][0]):
            by_y.append(right[j])
            j += 1
        else:
            by_y.append(left[i])
            i += 1
    by_y.extend(left[i:])
    by_y.extend(right[j:])

    # Non-strict comparisons keep tied pairs in play for the tie rule.
    bd2 = best[0]
    strip = [p for p in by_y if (p[0] - mid_x) * (p[0] - mid_x) <= bd2]
    for a in range(len(strip)):
        p = strip[a]
        for b in range(a + 1, len(strip)):
            q = strip[b]
            dy = q[1] - p[1]
            if dy * dy > best[0]:
                break
            dx = q[0] - p[0]
            d2 = dx * dx + dy * dy
            if d2 <= best[0]:
                pair = (p, q) if p <= q else (q, p)
                if d2 < best[0] or pair < best[1]:
                    best = (d2, pair)
    return best, by_y


def closest_pair_fast(points: Iterable) -> PairResult:
    """Divide-and-conquer closest pair in O(m log m)."""
    pts = sorted(as_points(points))
    if len(pts) < 2:
        return NO_PAIR
    best, _ = _recurse(pts, 0, len(pts), _INF_KEY)
    return _result(best)


def closest_pair_sorted(pts: list[Point]) -> PairResult:
    """closest_pair_fast for callers that already hold sorted, validated Points."""
    if len(pts) < 2:
        return NO_PAIR
    best, _ = _recurse(pts, 0, len(pts), _INF_KEY)
    return _result(best)


def closest_pair_brute(points: Iterable, chunk: int = 1024) -> PairResult:
    """All-pairs scan; the oracle for every other closest-pair path.

    Vectorised over rows with numpy, but still the plain quadratic scan.
    """
    pts = sorted(as_points(points))
    m = len(pts)
    if m < 2:
        return NO_PAIR
    arr = np.array(pts, dtype=np.float64)
    xs, ys = arr[:, 0], arr[:, 1]
    best_d2 = math.inf
    best_ij = None
    for start in range(0, m - 1, chunk):
        stop = min(start + chunk, m - 1)
        dx = xs[None, :] - xs[start:stop, None]
        dy = ys[None, :] - ys[start:stop, None]
        d2 = dx * dx + dy * dy
        rows = np.arange(start, stop)[:, None]
        d2[np.arange(m)[None, :] <= rows] = np.inf
        # Row-major argmin: smallest i, then smallest j among ties.
        flat = int(np.argmin(d2))
        val = float(d2.flat[flat])
        if val < best_d2:
            best_d2 = val
            best_ij = (start + flat // m, flat % m)
    i, j = best_ij
    return PairResult((pts[i], pts[j]), math.sqrt(best_d2))
