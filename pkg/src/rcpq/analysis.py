"""Candidate-pair experiments.

A pair p, q of S is a candidate pair for a family of regions if some region
R of the family has p, q as the closest pair of R n S. This module builds the
circle instance where fat rectangles produce quadratically many candidate
pairs, decides membership in the order-k L-infinity Delaunay graph, and
samples candidate pairs for axis-parallel squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .closest_pair import closest_pair_brute
from .geometry import Point, Rect, as_point, as_points, pair_key


@dataclass(frozen=True)
class CandidatePairWitness:
    pair: tuple[Point, Point]
    rect: Rect
    f: float


def gen_lower_bound_instance(n: int, arc: float = 1e-3, seed: int = 0) -> list[Point]:
    """n points on the unit circle, half near (r, r) and half near (-r, -r), r = sqrt(2)/2.

    Angles are drawn within ``arc`` radians of pi/4 and 5pi/4; draws that
    repeat an x or y coordinate already used are replaced from the same RNG.
    """
    if int(n) != n or n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n!r}")
    if not (0 < arc <= 1e-2):
        raise ValueError(f"arc must lie in (0, 0.01], got {arc!r}")
    rng = np.random.default_rng(seed)
    seen_x, seen_y = set(), set()
    out = []
    for centre in (math.pi / 4, 5 * math.pi / 4):
        made = 0
        while made < n // 2:
            theta = centre + rng.uniform(-arc, arc)
            x, y = math.cos(theta), math.sin(theta)
            if x in seen_x or y in seen_y:
                continue
            seen_x.add(x)
            seen_y.add(y)
            out.append(Point(x, y))
            made += 1
    return out


def corner_rect(p: Point, q: Point) -> Rect:
    return Rect(min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y))


def is_candidate_witness(p, q, points: Iterable, f: float) -> Optional[CandidatePairWitness]:
    """Witness that (p, q) is a candidate pair via their corner rectangle.

    Present when that rectangle has aspect ratio <= f and p, q is the closest
    pair of the points it contains; absent otherwise (which does not rule out
    other witnesses).
    """
    p, q = as_point(p), as_point(q)
    if p.x == q.x or p.y == q.y:
        return None
    R = corner_rect(p, q)
    if R.aspect_ratio > f:
        return None
    inside = [s for s in as_points(points) if R.contains(s)]
    best = closest_pair_brute(inside)
    if best.pair is None or best.pair != pair_key(p, q):
        return None
    return CandidatePairWitness(pair_key(p, q), R, f)


def lower_bound_candidates(n: int, f: float = 1.1, arc: float = 1e-3, seed: int = 0):
    """Verify every cross pair of the circle instance; returns (points, verified)."""
    pts = gen_lower_bound_instance(n, arc, seed)
    half = n // 2
    verified = []
    for p in pts[:half]:
        for q in pts[half:]:
            w = is_candidate_witness(p, q, pts, f)
            if w is not None:
                verified.append(w)
    return pts, verified


# -- order-k L-infinity Delaunay graph --------------------------------------

_SIDES = ("L", "R", "B", "T")


def _fix(side: str, pt: Point):
    # The equation that puts pt on the given side of the square (L, B, s):
    # L = x, L + s = x, B = y or B + s = y.
    return (side, pt.x if side in ("L", "R") else pt.y)


def _on_side(side, px, py, L, B, s, tol):
    if side in ("L", "R"):
        return (B - tol <= py) & (py <= B + s + tol)
    return (L - tol <= px) & (px <= L + s + tol)


def del_square_edge(p, q, points: Iterable, k: int) -> bool:
    """Whether p, q span an edge of the order-k L-infinity Delaunay graph.

    Decides if some axis-parallel square has p and q on its boundary and at
    most k points of S strictly inside. The interior count is piecewise
    constant and can only drop when a point moves onto the boundary, so it
    suffices to check the squares where a third point coordinate is tight:
    put p and q on a chosen pair of sides (2 equations in the square's left
    edge L, bottom edge B and side s) and close the system with every
    equation L, L + s, B, B + s = a coordinate of S.
    """
    p, q = as_point(p), as_point(q)
    if p == q:
        raise ValueError("p and q must be distinct")
    pts = np.array(as_points(points), dtype=np.float64).reshape(-1, 2)
    others = pts[~(((pts[:, 0] == p.x) & (pts[:, 1] == p.y))
                   | ((pts[:, 0] == q.x) & (pts[:, 1] == q.y)))]
    ox, oy = others[:, 0], others[:, 1]
    every = np.vstack([pts, [[p.x, p.y], [q.x, q.y]]])
    scale = 1.0 + float(np.abs(every).max())
    tol = 1e-12 * scale
    xs_all, ys_all = every[:, 0], every[:, 1]

    for sp in _SIDES:
        for sq in _SIDES:
            eqs = [_fix(sp, p), _fix(sq, q)]
            types = {t for t, _ in eqs}
            if len(types) == 1:
                continue  # both on one side: L = px = qx cannot hold in general
            Ls, Bs, ss = _close_system(eqs, xs_all, ys_all)
            if Ls is None or len(Ls) == 0:
                continue
            ok = ss > tol
            ok &= _on_side(sp, p.x, p.y, Ls, Bs, ss, tol)
            ok &= _on_side(sq, q.x, q.y, Ls, Bs, ss, tol)
            if not ok.any():
                continue
            Ls, Bs, ss = Ls[ok], Bs[ok], ss[ok]
            inside = ((ox[None, :] > Ls[:, None] + tol) & (ox[None, :] < (Ls + ss)[:, None] - tol)
                      & (oy[None, :] > Bs[:, None] + tol) & (oy[None, :] < (Bs + ss)[:, None] - tol))
            if (inside.sum(axis=1) <= k).any():
                return True
    return False


def _close_system(eqs, xs, ys):
    """All (L, B, s) solving the two given equations plus one more from S."""
    d = dict(eqs)
    if "L" in d and "R" in d:
        L = d["L"]
        s = d["R"] - L
        Bs = np.concatenate([ys, ys - s])
        return np.full(len(Bs), L), Bs, np.full(len(Bs), s)
    if "B" in d and "T" in d:
        B = d["B"]
        s = d["T"] - B
        Ls = np.concatenate([xs, xs - s])
        return Ls, np.full(len(Ls), B), np.full(len(Ls), s)
    # One x-type and one y-type equation: the third fixes s against either.
    (xt, xv), = [(t, v) for t, v in eqs if t in ("L", "R")]
    (yt, yv), = [(t, v) for t, v in eqs if t in ("B", "T")]
    s_x = (xs - xv) if xt == "L" else (xv - xs)
    s_y = (ys - yv) if yt == "B" else (yv - ys)
    s = np.concatenate([s_x, s_y])
    L = np.full(len(s), xv) if xt == "L" else xv - s
    B = np.full(len(s), yv) if yt == "B" else yv - s
    return L, B, s


# -- square candidate sampler ----------------------------------------------

def _pair_ranks(pts: np.ndarray) -> np.ndarray:
    """rank[i, j] orders pairs by (squared distance, ordered pair); diagonal is max."""
    m = len(pts)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    lex = np.empty(m, dtype=np.int64)
    lex[order] = np.arange(m)
    dx = pts[:, 0][None, :] - pts[:, 0][:, None]
    dy = pts[:, 1][None, :] - pts[:, 1][:, None]
    d2 = dx * dx + dy * dy
    lo = np.minimum(lex[:, None], lex[None, :])
    hi = np.maximum(lex[:, None], lex[None, :])
    flat = np.lexsort((hi.ravel(), lo.ravel(), d2.ravel()))
    rank = np.empty(m * m, dtype=np.int64)
    rank[flat] = np.arange(m * m)
    rank = rank.reshape(m, m)
    rank[np.arange(m), np.arange(m)] = np.iinfo(np.int64).max
    return rank


def _grow(anchor, sx, sy, pts, rank, found):
    """Closest pairs of the squares anchored at ``anchor`` as their side grows."""
    du = sx * pts[:, 0] - sx * anchor[0]
    dv = sy * pts[:, 1] - sy * anchor[1]
    inq = np.flatnonzero((du >= 0) & (dv >= 0))
    if len(inq) < 2:
        return
    off = np.maximum(du[inq], dv[inq])
    order = np.argsort(off, kind="stable")
    ids = inq[order]
    offs = off[order]
    best = None
    for t in range(1, len(ids)):
        r = rank[ids[t], ids[:t]]
        j = int(np.argmin(r))
        if best is None or r[j] < best[0]:
            best = (int(r[j]), int(ids[t]), int(ids[j]))
        # Record only once every point at this offset is in.
        if t + 1 == len(ids) or offs[t + 1] != offs[t]:
            found.add((min(best[1], best[2]), max(best[1], best[2])))


def square_candidate_survey(points: Iterable, trials: int = 200, seed: int = 0):
    """Distinct closest pairs over a structured + random family of squares.

    Family: squares anchored at every point, in all four orientations, with
    every side at which the content changes; the same growth from anchors
    (x_i, y_j) mixing two points' coordinates; and ``trials`` uniformly random
    squares over the bounding box. Returns (set of ordered Point pairs, count).
    """
    pts_l = as_points(points)
    m = len(pts_l)
    if m < 2:
        return set(), 0
    pts = np.array(pts_l, dtype=np.float64)
    rank = _pair_ranks(pts)
    rng = np.random.default_rng(seed)
    found: set[tuple[int, int]] = set()
    signs = ((1, 1), (-1, 1), (-1, -1), (1, -1))
    for i in range(m):
        for sx, sy in signs:
            _grow(pts[i], sx, sy, pts, rank, found)
    for _ in range(min(m * m, 4 * m)):
        a, b = rng.integers(0, m, size=2)
        sx, sy = signs[int(rng.integers(0, 4))]
        _grow((pts[a, 0], pts[b, 1]), sx, sy, pts, rank, found)
    lo = pts.min(axis=0)
    span = float((pts.max(axis=0) - lo).max()) or 1.0
    for _ in range(trials):
        side = rng.uniform(0.01, 1.0) * span
        ax, ay = lo + rng.uniform(-0.25, 1.0, size=2) * span
        R = Rect(ax, ax + side, ay, ay + side)
        inside = [pp for pp in pts_l if R.contains(pp)]
        best = closest_pair_brute(inside)
        if best.pair is not None:
            found.add(tuple(sorted(pts_l.index(x) for x in best.pair)))
    pairs = {pair_key(pts_l[i], pts_l[j]) for i, j in found}
    return pairs, len(pairs)


def square_candidate_check(points: Sequence, trials: int = 200, seed: int = 0, k: int = 2):
    """Survey the square candidates and test each against Del(S, k).

    Returns (pairs found, list of pairs that fail the edge test).
    """
    pairs, _ = square_candidate_survey(points, trials, seed)
    failures = [pr for pr in sorted(pairs) if not del_square_edge(pr[0], pr[1], points, k)]
    return pairs, failures


def del_square_edge_count(points: Sequence, k: int = 2) -> int:
    """Number of edges of Del(S, k), by testing all pairs."""
    pts = as_points(points)
    return sum(del_square_edge(pts[i], pts[j], pts, k)
               for i in range(len(pts)) for j in range(i + 1, len(pts)))


def loglog_slope(sizes: Sequence[float], counts: Sequence[float]) -> float:
    return float(np.polyfit(np.log(sizes), np.log(counts), 1)[0])
