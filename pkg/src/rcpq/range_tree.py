"""Static 2-level range tree with fractional cascading.

Points are ranked by their primary coordinate (x unless told otherwise) and
stored at the leaves of an implicit balanced binary tree over ranks. Each
node u keeps its subtree's points sorted by a secondary key. All nodes of one
depth occupy disjoint slices of a single level array, so the tree is stored
as ``height + 1`` arrays of length n.

Cascading: for level d the array ``left_counts[d]`` holds, for every
position i, how many entries before i move to the left child. One binary
search at the root then locates the key range in every visited node in O(1)
per node. With ``cascading=False`` each canonical node does its own binary
search instead (O(log^2 n) per query).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from typing import Iterable, Optional, Sequence

import numpy as np

from .geometry import Point, Rect, as_points
from .rmq import RmqIndex

INF = math.inf


class GeneralPositionError(ValueError):
    """Two input points share an x or a y coordinate (or coincide)."""

    def __init__(self, p, q, axis: str):
        self.points = (p, q)
        self.axis = axis
        super().__init__(f"points {tuple(p)} and {tuple(q)} share the same {axis} coordinate")


def check_general_position(xs: np.ndarray, ys: np.ndarray, axes: str = "xy") -> None:
    """Raise GeneralPositionError naming an offending pair, if any."""
    for axis in axes:
        coord = xs if axis == "x" else ys
        if len(coord) < 2:
            continue
        order = np.argsort(coord, kind="stable")
        dup = np.flatnonzero(coord[order[1:]] == coord[order[:-1]])
        if len(dup):
            i, j = order[dup[0]], order[dup[0] + 1]
            raise GeneralPositionError(Point(float(xs[i]), float(ys[i])),
                                       Point(float(xs[j]), float(ys[j])), axis)


class RangeTree:
    """Range tree answering rectangle report, count and min-weight queries.

    ``key=(a, b)`` makes the secondary order a*x + b*y; rectangle queries
    only make sense for the default (0, 1), other keys go through
    ``canonical``.
    """

    def __init__(self, points: Iterable, weights: Optional[Sequence[float]] = None,
                 key: tuple[float, float] = (0.0, 1.0), cascading: bool = True,
                 rmq: str = "block"):
        pts = as_points(points)
        xs = np.array([p.x for p in pts], dtype=np.float64)
        ys = np.array([p.y for p in pts], dtype=np.float64)
        check_general_position(xs, ys)
        a, b = key
        secondary = ys if (a, b) == (0.0, 1.0) else a * xs + b * ys
        self.points = pts
        self.key = (a, b)
        self._build(xs, secondary, weights=weights, cascading=cascading, rmq=rmq)

    @classmethod
    def from_arrays(cls, primary: np.ndarray, secondary: np.ndarray,
                    weights: Optional[np.ndarray] = None, cascading: bool = True,
                    rmq: str = "block", keep_order: bool = True) -> "RangeTree":
        """Build over precomputed coordinates; primary values must be distinct.

        Reported ids are positions in the given arrays. ``points`` is left
        unset, so only id-level queries are available.
        """
        self = cls.__new__(cls)
        self.points = None
        self.key = None
        self._build(np.asarray(primary, dtype=np.float64),
                    np.asarray(secondary, dtype=np.float64),
                    weights=weights, cascading=cascading, rmq=rmq,
                    keep_order=keep_order)
        return self

    def _build(self, primary, secondary, weights=None, cascading=True, rmq="block",
               keep_order=True):
        n = self.n = len(primary)
        self.cascading = cascading
        self.height = H = (n - 1).bit_length() if n else 0
        perm = np.argsort(primary, kind="stable")
        if n > 1 and (np.diff(primary[perm]) == 0).any():
            raise ValueError("primary coordinates must be distinct")
        self.ids_by_rank = perm.astype(np.int32)
        self._ids = memoryview(self.ids_by_rank)
        self._primary_sorted = primary[perm].tolist()
        key_by_rank = secondary[perm]

        # Global (key, rank) order; stable regrouping by node gives each level.
        glob = np.lexsort((np.arange(n), key_by_rank)).astype(np.int32)
        self.root_keys = key_by_rank[glob].tolist()
        orders = []
        for d in range(H + 1):
            shift = H - d
            if shift == 0:
                orders.append(np.arange(n, dtype=np.int32))
            else:
                grouping = np.argsort(glob >> shift, kind="stable")
                orders.append(glob[grouping])
        self.left_counts = []
        for d in range(H):
            goes_left = ((orders[d] >> (H - d - 1)) & 1) == 0
            cl = np.zeros(n + 1, dtype=np.int32)
            np.cumsum(goes_left, out=cl[1:])
            self.left_counts.append(cl)
        self._cl = [memoryview(c) for c in self.left_counts]

        self.level_keys = None
        if not cascading:
            self.level_keys = [key_by_rank[o] for o in orders]

        self.weights = None
        self.rmq = None
        if weights is not None:
            w = np.asarray(weights, dtype=np.float64)
            if len(w) != n:
                raise ValueError("need exactly one weight per point")
            w_by_rank = w[perm]
            self.weights = w
            self.level_weights = [w_by_rank[o] for o in orders]
            self.rmq = [RmqIndex(lw, method=rmq) for lw in self.level_weights]

        self.orders = orders if (keep_order or weights is not None) else None
        self._orders_np = self.orders
        self._orders = [memoryview(o) for o in orders] if self.orders is not None else None

    # -- decomposition -------------------------------------------------------

    def canonical(self, x1: float, x2: float, k1: float, k2: float,
                  strict_low: bool = False) -> list[tuple[int, int, int]]:
        """Canonical subarrays for primary in [x1, x2] and key in [k1, k2].

        Returns (level, start, stop) triples; the slices level_array[start:stop]
        are disjoint and together hold exactly the matching points. With
        ``strict_low`` the key's lower bound is open.
        """
        n = self.n
        if n == 0:
            return []
        lo = bisect_left(self._primary_sorted, x1)
        hi = bisect_right(self._primary_sorted, x2)
        if lo >= hi or k1 > k2:
            return []
        H = self.height
        out = []
        if not self.cascading:
            return self._canonical_fallback(lo, hi, k1, k2, strict_low)
        keys = self.root_keys
        a = bisect_right(keys, k1) if strict_low else bisect_left(keys, k1)
        b = bisect_right(keys, k2)
        if a >= b:
            return out
        cls_ = self._cl
        stack = [(0, 0, a, b)]
        while stack:
            d, s, a, b = stack.pop()
            size = 1 << (H - d)
            e = s + size
            if e > n:
                e = n
            if lo <= s and e <= hi:
                out.append((d, a, b))
                continue
            cl = cls_[d]
            base = cl[s]
            la = cl[a] - base
            lb = cl[b] - base
            m = s + (size >> 1)
            if lo < m and lb > la:
                stack.append((d + 1, s, s + la, s + lb))
            if hi > m and (b - a) > (lb - la):
                stack.append((d + 1, m, m + (a - s) - la, m + (b - s) - lb))
        return out

    def _canonical_fallback(self, lo, hi, k1, k2, strict_low):
        n, H = self.n, self.height
        out = []
        side = "right" if strict_low else "left"
        stack = [(0, 0)]
        while stack:
            d, s = stack.pop()
            size = 1 << (H - d)
            e = min(s + size, n)
            if lo <= s and e <= hi:
                keys = self.level_keys[d][s:e]
                a = s + int(keys.searchsorted(k1, side=side))
                b = s + int(keys.searchsorted(k2, side="right"))
                if a < b:
                    out.append((d, a, b))
                continue
            m = s + (size >> 1)
            if lo < m:
                stack.append((d + 1, s))
            if hi > m:
                stack.append((d + 1, m))
        return out

    def canonical_rect(self, rect: Rect) -> list[tuple[int, int, int]]:
        return self.canonical(rect.ax, rect.bx, rect.ay, rect.by)

    # -- queries -------------------------------------------------------------

    def count_ids(self, x1, x2, k1, k2, strict_low=False) -> int:
        return sum(b - a for _, a, b in self.canonical(x1, x2, k1, k2, strict_low))

    def report_ids(self, x1, x2, k1, k2, strict_low=False) -> np.ndarray:
        """Input positions of the matching points."""
        nodes = self.canonical(x1, x2, k1, k2, strict_low)
        if not nodes:
            return np.zeros(0, dtype=np.int32)
        orders = self._orders_np
        ranks = np.concatenate([orders[d][a:b] for d, a, b in nodes])
        return self.ids_by_rank[ranks]

    def min_weight_id(self, x1, x2, k1, k2, strict_low=False) -> Optional[tuple[float, int]]:
        """(weight, input position) of a minimum-weight matching point."""
        if self.rmq is None:
            raise ValueError("range tree was built without weights")
        best = None
        orders = self._orders
        ids = self._ids
        for d, a, b in self.canonical(x1, x2, k1, k2, strict_low):
            rq = self.rmq[d]
            pos = rq.query(a, b - 1)
            w = rq._vals[pos]
            if best is None or w < best[0]:
                best = (w, ids[orders[d][pos]])
        return best

    def count(self, rect: Rect) -> int:
        return self.count_ids(rect.ax, rect.bx, rect.ay, rect.by)

    def report(self, rect: Rect) -> list[Point]:
        pts = self.points
        return [pts[i] for i in self.report_ids(rect.ax, rect.bx, rect.ay, rect.by).tolist()]

    def min_weight(self, rect: Rect) -> Optional[tuple[float, Point]]:
        """Minimum weight over the points in rect with its witness point."""
        res = self.min_weight_id(rect.ax, rect.bx, rect.ay, rect.by)
        if res is None:
            return None
        w, i = res
        return (w, self.points[i])

    # -- accounting ----------------------------------------------------------

    def stored_entries(self) -> int:
        """Stored words, counting every array element the tree keeps."""
        total = self.n * 2  # ranks -> ids, sorted primary keys
        total += self.n  # root keys
        if self.orders is not None:
            total += sum(len(o) for o in self.orders)
        total += sum(len(c) for c in self.left_counts)
        if self.level_keys is not None:
            total += sum(len(k) for k in self.level_keys)
        if self.rmq is not None:
            total += sum(r.stored_words() for r in self.rmq)
        return total


def rt_build(points: Iterable, weights=None, **kwargs) -> RangeTree:
    return RangeTree(points, weights, **kwargs)
