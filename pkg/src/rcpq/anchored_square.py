"""Smallest anchored square containing c points.

For a query point q the closed quadrant above-right of q is split by the
diagonal through q into two cones:

    VD_q: p_x >= q_x and p_y - p_x >= q_y - q_x   (closed on both rays)
    DH_q: p_y >= q_y and p_y - p_x <  q_y - q_x   (the diagonal belongs to VD_q)

Inside VD_q the L-infinity offset from q is p_y - q_y, inside DH_q it is
p_x - q_x. So the c lowest points of VD_q and the c leftmost points of DH_q
contain the c points of smallest offset, and the side of the smallest square
anchored at q is the c-th smallest offset among those <= 2c candidates.

Each cone is served by a range tree whose canonical arrays are sorted by the
cone's diagonal key; each array entry also stores the ids of the c smallest
weights in the suffix starting there. The cone's key range is a suffix of
every canonical array, so one stored list per canonical node is enough.

The other three corner orientations reuse the same code on reflected
coordinates (x, y) -> (+-x, +-y).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .geometry import Point, as_points, quadrant_contains
from .range_tree import RangeTree, check_general_position

# Orientation -> reflection signs. NE grows up-right from a bottom-left
# corner at q, NW up-left (bottom-right corner), SW down-left (top-right
# corner), SE down-right (top-left corner).
ORIENTATIONS = {"NE": (1.0, 1.0), "NW": (-1.0, 1.0), "SW": (-1.0, -1.0), "SE": (1.0, -1.0)}
_QUADRANT_OF = {"NE": 1, "NW": 2, "SW": 3, "SE": 4}
_ALIASES = {"↗": "NE", "↖": "NW", "↙": "SW", "↘": "SE"}


def normalize_orientation(o: str) -> str:
    o = _ALIASES.get(o, o)
    if o not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {o!r}; expected one of NE, NW, SW, SE")
    return o


@dataclass(frozen=True)
class AnchoredSquareResult:
    side: float
    support: tuple[Point, ...]


class ConeTree:
    """Range tree over (primary, key) with suffix c-minima of a weight."""

    def __init__(self, primary: np.ndarray, key: np.ndarray, weight: np.ndarray,
                 c: int, cascading: bool = True):
        self.c = c
        self.weight = np.asarray(weight, dtype=np.float64)
        self._w = self.weight.tolist()
        tree = self.tree = RangeTree.from_arrays(primary, key, cascading=cascading)
        n, H = tree.n, tree.height
        self.suffix_min = []
        if n == 0:
            return
        # Row n of every level is an empty sentinel.
        w_ext = np.append(self.weight, np.inf)
        leaf = np.full((n + 1, c), -1, dtype=np.int32)
        leaf[:n, 0] = tree.ids_by_rank[tree.orders[H]]
        levels = [None] * (H + 1)
        levels[H] = leaf
        pos = np.arange(n, dtype=np.int64)
        for d in range(H - 1, -1, -1):
            shift = H - d
            cl = tree.left_counts[d].astype(np.int64)
            s = (pos >> shift) << shift
            e = np.minimum(s + (1 << shift), n)
            m = np.minimum(s + (1 << (shift - 1)), n)
            left_before = cl[pos] - cl[s]
            pl = s + left_before
            pr = m + (pos - s) - left_before
            pl = np.where(pl < m, pl, n)
            pr = np.where(pr < e, pr, n)
            child = levels[d + 1]
            cand = np.concatenate([child[pl], child[pr]], axis=1)
            cw = w_ext[cand]  # id -1 maps to the appended +inf
            pick = np.argsort(cw, axis=1, kind="stable")[:, :c]
            row = np.empty((n + 1, c), dtype=np.int32)
            row[:n] = np.take_along_axis(cand, pick, axis=1)
            row[n] = -1
            levels[d] = row
        self.suffix_min = levels
        self._rows = [memoryview(lv.reshape(-1)) for lv in levels]
        # Only the cascading links and suffix lists are needed for queries.
        tree.orders = tree._orders = tree._orders_np = None

    def lowest(self, x1: float, k1: float, strict_low: bool = False) -> list[int]:
        """Ids of the c smallest-weight points with primary >= x1, key >= k1."""
        c = self.c
        w = self._w
        cand = []
        for d, a, _ in self.tree.canonical(x1, math.inf, k1, math.inf, strict_low):
            row = self._rows[d]
            for j in range(a * c, a * c + c):
                i = row[j]
                if i < 0:
                    break
                cand.append((w[i], i))
        return [i for _, i in heapq.nsmallest(c, cand)]

    def stored_entries(self) -> int:
        return self.tree.stored_entries() + sum(lv.size for lv in self.suffix_min)


class _QuadrantSquares:
    """Smallest square with bottom-left corner at a query point (u, v)."""

    def __init__(self, u: np.ndarray, v: np.ndarray, c: int, cascading: bool):
        self.c = c
        self.u = u.tolist()
        self.v = v.tolist()
        self.vd = ConeTree(u, v - u, v, c, cascading)
        self.dh = ConeTree(v, u - v, u, c, cascading)

    def query(self, qu: float, qv: float) -> tuple[float, list[int]]:
        ids = self.vd.lowest(qu, qv - qu) + self.dh.lowest(qv, qu - qv, strict_low=True)
        u, v = self.u, self.v
        offsets = []
        for i in ids:
            du = u[i] - qu
            dv = v[i] - qv
            # Guards against a point leaking in through key rounding.
            if du >= 0 and dv >= 0:
                offsets.append(du if du > dv else dv)
        if len(offsets) < self.c:
            return math.inf, ids
        offsets.sort()
        return offsets[self.c - 1], ids

    def stored_entries(self) -> int:
        return self.vd.stored_entries() + self.dh.stored_entries()


class AnchoredSquares:
    """Four-orientation anchored-square structure over a fixed point set."""

    def __init__(self, points: Iterable, c: int = 5, cascading: bool = True,
                 _validated: bool = False):
        if int(c) != c or c < 1:
            raise ValueError(f"c must be a positive integer, got {c!r}")
        self.c = int(c)
        pts = self.points = as_points(points)
        xs = np.array([p.x for p in pts], dtype=np.float64)
        ys = np.array([p.y for p in pts], dtype=np.float64)
        if not _validated:
            check_general_position(xs, ys)
        self._by_orientation = {
            o: _QuadrantSquares(sx * xs, sy * ys, self.c, cascading)
            for o, (sx, sy) in ORIENTATIONS.items()
        }

    def query(self, q, orientation: str = "NE") -> AnchoredSquareResult:
        o = normalize_orientation(orientation)
        sx, sy = ORIENTATIONS[o]
        side, ids = self._by_orientation[o].query(sx * q[0], sy * q[1])
        return AnchoredSquareResult(side, tuple(self.points[i] for i in ids))

    def side(self, q, orientation: str = "NE") -> float:
        o = normalize_orientation(orientation)
        sx, sy = ORIENTATIONS[o]
        return self._by_orientation[o].query(sx * q[0], sy * q[1])[0]

    def stored_entries(self) -> int:
        return sum(s.stored_entries() for s in self._by_orientation.values())


def as_build(points: Iterable, c: int = 5, **kwargs) -> AnchoredSquares:
    return AnchoredSquares(points, c, **kwargs)


def as_query(structure: AnchoredSquares, q, orientation: str) -> AnchoredSquareResult:
    return structure.query(q, orientation)


def anchored_side_scan(points, q, orientation: str, c: int) -> float:
    """Brute-force c-th smallest L-infinity offset over the closed quadrant."""
    k = _QUADRANT_OF[normalize_orientation(orientation)]
    offs = sorted(max(abs(p[0] - q[0]), abs(p[1] - q[1]))
                  for p in points if quadrant_contains(q, k, p))
    return offs[c - 1] if len(offs) >= c else math.inf
