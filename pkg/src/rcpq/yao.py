"""Quadrant Yao graph.

For every point p and closed quadrant Q_k(p) the graph holds one directed
edge to the nearest other point inside that quadrant. Nearest means smallest
squared distance; remaining ties go to the lexicographically smallest target.

Construction methods:

* ``"kdtree"`` (default): a kd-tree over the points, searched once per point
  and quadrant with quadrant-constrained pruning. Most searches are settled
  up front from a batched k-nearest-neighbour lookup (scipy's cKDTree): when
  the best in-quadrant candidate among the k nearest is strictly closer than
  the k-th neighbour, no point outside the list can beat it. Everything else
  runs the exact pruned search.
* ``"brute"``: all-pairs scan, O(n^2). This is the reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy.spatial import cKDTree

from .geometry import Point, as_points

_LEAF_SIZE = 16
# Neighbour counts tried by the batched pre-pass.
_PREPASS_K = (16, 96)


def _quadrant_masks(dx: np.ndarray, dy: np.ndarray):
    """Closed-quadrant membership of offsets (target - source), k = 1..4."""
    return (
        (dx >= 0) & (dy >= 0),
        (dx <= 0) & (dy >= 0),
        (dx <= 0) & (dy <= 0),
        (dx >= 0) & (dy <= 0),
    )


class _QuadrantKdTree:
    """Static kd-tree answering nearest-in-closed-quadrant queries exactly."""

    def __init__(self, xs: np.ndarray, ys: np.ndarray):
        self.xs = xs.tolist()
        self.ys = ys.tolist()
        # node: [minx, maxx, miny, maxy, left, right, ids or None]
        self.nodes: list = []
        self.root = self._build(np.arange(len(xs)), xs, ys, 0) if len(xs) else -1

    def _build(self, idx: np.ndarray, xs, ys, depth: int) -> int:
        px, py = xs[idx], ys[idx]
        box = [float(px.min()), float(px.max()), float(py.min()), float(py.max())]
        node_id = len(self.nodes)
        self.nodes.append(None)
        if len(idx) <= _LEAF_SIZE:
            self.nodes[node_id] = box + [-1, -1, idx.tolist()]
            return node_id
        coord = px if (box[1] - box[0]) >= (box[3] - box[2]) else py
        half = len(idx) // 2
        part = np.argpartition(coord, half)
        left = self._build(idx[part[:half]], xs, ys, depth + 1)
        right = self._build(idx[part[half:]], xs, ys, depth + 1)
        self.nodes[node_id] = box + [left, right, None]
        return node_id

    def nearest_in_quadrant(self, i: int, k: int) -> Optional[tuple[float, int]]:
        """(squared distance, id) of the nearest point in Q_k(point i)."""
        xs, ys = self.xs, self.ys
        qx, qy = xs[i], ys[i]
        east = k in (1, 4)
        north = k in (1, 2)
        best_d2 = math.inf
        best = -1
        stack = [self.root]
        nodes = self.nodes
        while stack:
            minx, maxx, miny, maxy, left, right, ids = nodes[stack.pop()]
            # Clip the box to the quadrant; prune if the clip is empty.
            if east:
                if maxx < qx:
                    continue
                gx = minx - qx if minx > qx else 0.0
            else:
                if minx > qx:
                    continue
                gx = qx - maxx if maxx < qx else 0.0
            if north:
                if maxy < qy:
                    continue
                gy = miny - qy if miny > qy else 0.0
            else:
                if miny > qy:
                    continue
                gy = qy - maxy if maxy < qy else 0.0
            if gx * gx + gy * gy > best_d2:
                continue
            if ids is not None:
                for j in ids:
                    if j == i:
                        continue
                    dx = xs[j] - qx
                    dy = ys[j] - qy
                    if (dx >= 0) != east and dx != 0:
                        continue
                    if (dy >= 0) != north and dy != 0:
                        continue
                    d2 = dx * dx + dy * dy
                    if d2 < best_d2 or (d2 == best_d2 and (xs[j], ys[j]) < (xs[best], ys[best])):
                        best_d2 = d2
                        best = j
                continue
            # Visit the child nearer to the query last so it is popped first.
            lbox = nodes[left]
            cx = (lbox[0] + lbox[1]) * 0.5 - qx
            cy = (lbox[2] + lbox[3]) * 0.5 - qy
            rbox = nodes[right]
            rx = (rbox[0] + rbox[1]) * 0.5 - qx
            ry = (rbox[2] + rbox[3]) * 0.5 - qy
            if cx * cx + cy * cy <= rx * rx + ry * ry:
                stack.append(right)
                stack.append(left)
            else:
                stack.append(left)
                stack.append(right)
        return (best_d2, best) if best >= 0 else None


@dataclass
class YaoGraph:
    """Edges of the four quadrant subgraphs.

    ``target[k - 1][i]`` is the id of point i's neighbour in Q_k, or -1;
    ``dist_sq[k - 1][i]`` the squared edge length (inf when absent).
    """

    points: list[Point]
    target: list[np.ndarray]
    dist_sq: list[np.ndarray]

    @property
    def n(self) -> int:
        return len(self.points)

    def edge(self, k: int, p) -> Optional[tuple[Point, float]]:
        """Out-edge of point p (a Point or an id) in Yao_k, as (target, length)."""
        i = p if isinstance(p, (int, np.integer)) else self._index()[tuple(p)]
        t = int(self.target[k - 1][i])
        if t < 0:
            return None
        return self.points[t], math.sqrt(float(self.dist_sq[k - 1][i]))

    def _index(self) -> dict:
        if not hasattr(self, "_id_of"):
            self._id_of = {p: i for i, p in enumerate(self.points)}
        return self._id_of

    def edges(self, k: int) -> list[tuple[Point, Point, float]]:
        tgt = self.target[k - 1]
        d2 = self.dist_sq[k - 1]
        pts = self.points
        return [(pts[i], pts[t], math.sqrt(float(d2[i])))
                for i, t in enumerate(tgt.tolist()) if t >= 0]

    def edge_pairs(self, k: int) -> set[tuple[int, int]]:
        return {(i, t) for i, t in enumerate(self.target[k - 1].tolist()) if t >= 0}

    def dump(self) -> str:
        """One edge per line: k px py qx qy length."""
        lines = []
        for k in (1, 2, 3, 4):
            for p, q, length in self.edges(k):
                lines.append(f"{k} {p.x!r} {p.y!r} {q.x!r} {q.y!r} {length!r}")
        return "\n".join(lines) + ("\n" if lines else "")


def _lex_better(xs, ys, a: int, b: int) -> bool:
    return (xs[a], ys[a]) < (xs[b], ys[b])


def _build_brute(xs: np.ndarray, ys: np.ndarray):
    n = len(xs)
    targets = [np.full(n, -1, dtype=np.int64) for _ in range(4)]
    dists = [np.full(n, np.inf) for _ in range(4)]
    # Lexicographic rank decides ties between equally distant targets.
    lex = np.empty(n, dtype=np.int64)
    lex[np.lexsort((ys, xs))] = np.arange(n)
    for i in range(n):
        dx = xs - xs[i]
        dy = ys - ys[i]
        d2 = dx * dx + dy * dy
        masks = _quadrant_masks(dx, dy)
        for k in range(4):
            mask = masks[k].copy()
            mask[i] = False
            if not mask.any():
                continue
            cand = np.flatnonzero(mask)
            cd = d2[cand]
            best = cand[np.lexsort((lex[cand], cd))[0]]
            targets[k][i] = best
            dists[k][i] = d2[best]
    return targets, dists


def _build_kdtree(xs: np.ndarray, ys: np.ndarray):
    n = len(xs)
    targets = [np.full(n, -1, dtype=np.int64) for _ in range(4)]
    dists = [np.full(n, np.inf) for _ in range(4)]
    if n < 2:
        return targets, dists
    lex = np.empty(n, dtype=np.int64)
    lex[np.lexsort((ys, xs))] = np.arange(n)
    pending = [np.arange(n) for _ in range(4)]
    ck = cKDTree(np.column_stack([xs, ys]))
    for kk in _PREPASS_K:
        todo = np.unique(np.concatenate(pending))
        if len(todo) == 0:
            break
        kk = min(kk, n)
        _, nbr = ck.query(np.column_stack([xs[todo], ys[todo]]), k=kk)
        nbr = nbr.reshape(len(todo), kk)
        dx = xs[nbr] - xs[todo][:, None]
        dy = ys[nbr] - ys[todo][:, None]
        d2 = dx * dx + dy * dy
        not_self = nbr != todo[:, None]
        # Everything at or beyond the list's farthest distance is uncertain.
        horizon = d2.max(axis=1) if kk < n else np.full(len(todo), np.inf)
        masks = _quadrant_masks(dx, dy)
        new_pending = []
        for k in range(4):
            want = np.zeros(n, dtype=bool)
            want[pending[k]] = True
            rows = np.flatnonzero(want[todo])
            m = masks[k][rows] & not_self[rows]
            cd = np.where(m, d2[rows], np.inf)
            best_d2 = cd.min(axis=1)
            ties = (cd == best_d2[:, None]).sum(axis=1)
            safety = horizon[rows] * (1.0 - 1e-9)
            empty_ok = np.isinf(best_d2) & np.isinf(horizon[rows])
            settled = (best_d2 < safety) & (ties == 1)
            col = np.argmin(cd, axis=1)
            src = todo[rows]
            hit = src[settled]
            targets[k][hit] = nbr[rows[settled], col[settled]]
            dists[k][hit] = best_d2[settled]
            new_pending.append(src[~(settled | empty_ok)])
        pending = new_pending
    if any(len(p) for p in pending):
        kd = _QuadrantKdTree(xs, ys)
        for k in range(4):
            for i in pending[k].tolist():
                res = kd.nearest_in_quadrant(i, k + 1)
                if res is not None:
                    targets[k][i] = res[1]
                    dists[k][i] = res[0]
    return targets, dists


def yao_build(points: Iterable, method: str = "kdtree") -> YaoGraph:
    pts = as_points(points)
    if len(set(pts)) != len(pts):
        seen = set()
        for p in pts:
            if p in seen:
                raise ValueError(f"duplicate point {tuple(p)}")
            seen.add(p)
    xs = np.array([p.x for p in pts], dtype=np.float64)
    ys = np.array([p.y for p in pts], dtype=np.float64)
    if method == "kdtree":
        targets, dists = _build_kdtree(xs, ys)
    elif method == "brute":
        targets, dists = _build_brute(xs, ys)
    else:
        raise ValueError(f"unknown Yao construction method {method!r}")
    return YaoGraph(pts, targets, dists)


def yao_weighted_sets(g: YaoGraph) -> list[list[tuple[Point, float, Point]]]:
    """S_1..S_4: points with an out-edge in Yao_k, weighted by its length."""
    return [[(p, length, q) for p, q, length in g.edges(k)] for k in (1, 2, 3, 4)]
