"""Range closest-pair index.

Structures held by an :class:`RcpIndex` over a point set S:

* a report/count range tree over S;
* the four-orientation anchored-square structure with c = 5;
* the quadrant Yao graph and, for k = 1..4, a min-weight range tree over the
  points S_k that have an out-edge in Yao_k, weighted by that edge.

Query for a rectangle R with shortest side l and aspect ratio f:

1. If |R n S| <= 4*ceil(4f), report R n S and run the closest-pair algorithm.
2. Otherwise find the smallest square with >= 5 points anchored at each
   corner of R (growing inwards); l' is the smallest side and
   delta = min(l', l/2).
3. For each k, the minimum edge weight of S_k inside B_k, kept if < delta.
4. For each k, brute force over the (at most 5) points of the corner square C_k.
5. Answer with the best pair found by steps 3 and 4.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .anchored_square import AnchoredSquares
from .closest_pair import closest_pair_sorted
from .geometry import Point, Rect, as_points, compute_regions, packing_threshold
from .range_tree import RangeTree, check_general_position
from .yao import YaoGraph, yao_build

# Step-2 corners of R and the orientation of the square anchored there.
_CORNER_SQUARES = (("NE", "ax", "ay"), ("NW", "bx", "ay"), ("SW", "bx", "by"), ("SE", "ax", "by"))

SMALL_PATH = "S1"
YAO_PATH = "S3"
CORNER_PATH = "S4"


class Step4OverflowWarning(UserWarning):
    """A corner square held more than c points (only possible with ties)."""


@dataclass(frozen=True)
class QueryOutcome:
    pair: Optional[tuple[Point, Point]]
    dist: float
    path: str
    count: int
    delta: Optional[float] = None
    ell_prime: Optional[float] = None
    w: tuple[float, ...] = ()
    w_corner: tuple[float, ...] = ()
    corner_counts: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.pair is not None


class RcpIndex:
    """Index answering closest-pair queries for axis-parallel rectangles."""

    def __init__(self, points: Iterable, c: int = 5, cascading: bool = True,
                 rmq: str = "block", yao_method: str = "kdtree"):
        if int(c) != c or c < 5:
            raise ValueError(f"c must be an integer >= 5 for exact answers, got {c!r}")
        pts = self.points = as_points(points)
        self.n = len(pts)
        self.c = int(c)
        self.cascading = cascading
        xs = self._xs = np.array([p.x for p in pts], dtype=np.float64)
        ys = self._ys = np.array([p.y for p in pts], dtype=np.float64)
        check_general_position(xs, ys)

        self.rc = RangeTree.from_arrays(xs, ys, cascading=cascading)
        self.squares = AnchoredSquares(pts, self.c, cascading=cascading, _validated=True)
        self.yao: YaoGraph = yao_build(pts, method=yao_method)

        # Weight = rank of (squared length, ordered pair), so the min-weight
        # query itself applies the lexicographic tie rule.
        self.mw: list[RangeTree] = []
        self.mw_source: list[np.ndarray] = []
        self.mw_target: list[np.ndarray] = []
        self.mw_dist_sq: list[np.ndarray] = []
        for k in range(4):
            tgt = self.yao.target[k]
            src = np.flatnonzero(tgt >= 0)
            t = tgt[src]
            d2 = self.yao.dist_sq[k][src]
            first_lower = (xs[t] < xs[src]) | ((xs[t] == xs[src]) & (ys[t] < ys[src]))
            a = np.where(first_lower, t, src)
            b = np.where(first_lower, src, t)
            ranks = np.empty(len(src), dtype=np.float64)
            ranks[np.lexsort((ys[b], xs[b], ys[a], xs[a], d2))] = np.arange(len(src))
            self.mw.append(RangeTree.from_arrays(xs[src], ys[src], weights=ranks,
                                                 cascading=cascading, rmq=rmq))
            self.mw_source.append(src)
            self.mw_target.append(t)
            self.mw_dist_sq.append(d2)
        self._pts_list = pts

    # -- accounting ----------------------------------------------------------

    def stored_entries(self) -> int:
        """Words stored across all sub-structures (Yao graph excluded: O(n))."""
        return (self.rc.stored_entries() + self.squares.stored_entries()
                + sum(t.stored_entries() for t in self.mw))

    def weighted_sets(self) -> list[list[tuple[Point, float, Point]]]:
        pts = self.points
        return [[(pts[s], math.sqrt(d), pts[t]) for s, t, d in
                 zip(self.mw_source[k].tolist(), self.mw_target[k].tolist(),
                     self.mw_dist_sq[k].tolist())] for k in range(4)]

    # -- queries -------------------------------------------------------------

    def _report(self, ax, bx, ay, by) -> list[int]:
        return self.rc.report_ids(ax, bx, ay, by).tolist()

    def count(self, rect: Rect) -> int:
        return self.rc.count_ids(rect.ax, rect.bx, rect.ay, rect.by)

    def _small_path(self, rect: Rect, count: int, notes=()) -> QueryOutcome:
        pts = self._pts_list
        inside = sorted(pts[i] for i in self._report(rect.ax, rect.bx, rect.ay, rect.by))
        res = closest_pair_sorted(inside)
        return QueryOutcome(res.pair, res.dist, SMALL_PATH, count, notes=tuple(notes))

    def corner_sides(self, rect: Rect) -> tuple[float, float, float, float]:
        """Side of the smallest c-point square anchored at each corner of rect."""
        sq = self.squares
        return tuple(sq.side((getattr(rect, cx), getattr(rect, cy)), o)
                     for o, cx, cy in _CORNER_SQUARES)

    def query_delta(self, rect: Rect) -> tuple[int, Optional[float], Optional[float]]:
        """(|R n S|, l', delta) of steps 1-2; l' and delta are None on the small path."""
        count = self.count(rect)
        if count <= packing_threshold(rect.aspect_ratio):
            return count, None, None
        ell_prime = min(self.corner_sides(rect))
        half = rect.shortest_side / 2
        return count, ell_prime, (half if ell_prime > half else ell_prime)

    def query(self, rect: Rect) -> QueryOutcome:
        if not all(math.isfinite(v) for v in rect.box):
            raise ValueError("query rectangle must have finite coordinates")
        count, ell_prime, delta = self.query_delta(rect)
        if delta is None:
            return self._small_path(rect, count)

        regions = compute_regions(rect, delta)
        pts = self._pts_list
        best = None  # (d2, pair, path)

        w = []
        notes = []
        for k in range(4):
            B = regions.shrunk[k]
            hit = self.mw[k].min_weight_id(B.ax, B.bx, B.ay, B.by)
            if hit is None:
                w.append(math.inf)
                continue
            j = hit[1]
            d2 = float(self.mw_dist_sq[k][j])
            dist = math.sqrt(d2)
            if not dist < delta:
                w.append(math.inf)
                continue
            p = pts[int(self.mw_source[k][j])]
            q = pts[int(self.mw_target[k][j])]
            if not (rect.contains(p) and rect.contains(q)):
                # Only reachable through rounding at a region boundary.
                notes.append(f"yao witness outside R for k={k + 1}; rescanned")
                return self._small_path(rect, count, notes)
            w.append(dist)
            cand = (d2, (p, q) if p <= q else (q, p), YAO_PATH)
            if best is None or cand[:2] < best[:2]:
                best = cand

        w_corner = []
        corner_counts = []
        for k in range(4):
            C = regions.corners[k]
            ids = self._report(C.ax, C.bx, C.ay, C.by)
            corner_counts.append(len(ids))
            if len(ids) > self.c:
                msg = f"corner square C{k + 1} holds {len(ids)} > {self.c} points"
                notes.append(msg)
                warnings.warn(msg, Step4OverflowWarning, stacklevel=2)
            res = closest_pair_sorted(sorted(pts[i] for i in ids))
            w_corner.append(res.dist)
            if res.pair is not None:
                dx = res.pair[1].x - res.pair[0].x
                dy = res.pair[1].y - res.pair[0].y
                cand = (dx * dx + dy * dy, res.pair, CORNER_PATH)
                if best is None or cand[:2] < best[:2]:
                    best = cand

        if best is None:
            # Cannot happen for exact arithmetic: more than 4*ceil(4f) points
            # always yield a pair closer than delta.
            notes.append("no pair closer than delta; rescanned")
            return self._small_path(rect, count, notes)
        d2, pair, path = best
        return QueryOutcome(pair, math.sqrt(d2), path, count, delta, ell_prime,
                            tuple(w), tuple(w_corner), tuple(corner_counts), tuple(notes))


def rcp_build(points: Iterable, **kwargs) -> RcpIndex:
    return RcpIndex(points, **kwargs)


def rcp_query(ix: RcpIndex, rect: Rect) -> QueryOutcome:
    return ix.query(rect)


def rcp_query_delta(ix: RcpIndex, rect: Rect):
    return ix.query_delta(rect)
