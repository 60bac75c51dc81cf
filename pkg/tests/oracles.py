"""Independent brute-force references used across the test suite."""

import math

import numpy as np

from rcpq.closest_pair import closest_pair_brute
from rcpq.geometry import Point, Rect, compute_regions, distance, packing_threshold, quadrant_contains


def pts_array(points):
    return np.asarray([(p[0], p[1]) for p in points], dtype=np.float64).reshape(-1, 2)


def cp_oracle(points):
    """(pair, dist) by all-pairs scan; ties go to the lexicographically smallest ordered pair."""
    a = pts_array(points)
    m = len(a)
    if m < 2:
        return None, math.inf
    order = np.lexsort((a[:, 1], a[:, 0]))
    a = a[order]
    i, j = np.triu_indices(m, 1)
    dx = a[j, 0] - a[i, 0]
    dy = a[j, 1] - a[i, 1]
    d2 = dx * dx + dy * dy
    # After the lexicographic sort, (i, j) with i < j is already an ordered pair
    # and (i, j) order is lexicographic order on pairs.
    k = int(np.lexsort((j, i, d2))[0])
    p = (float(a[i[k], 0]), float(a[i[k], 1]))
    q = (float(a[j[k], 0]), float(a[j[k], 1]))
    return (p, q), math.sqrt(float(d2[k]))


def rect_mask(a, rect):
    return (a[:, 0] >= rect.ax) & (a[:, 0] <= rect.bx) & (a[:, 1] >= rect.ay) & (a[:, 1] <= rect.by)


def rcp_oracle(a, rect):
    return cp_oracle(a[rect_mask(a, rect)])


def as_tuple_pair(pair):
    if pair is None:
        return None
    return tuple((float(p[0]), float(p[1])) for p in pair)


def anchored_side_oracle(a, q, signs, c):
    """c-th smallest L-infinity offset over the closed quadrant given by signs."""
    du = signs[0] * (a[:, 0] - q[0])
    dv = signs[1] * (a[:, 1] - q[1])
    m = (du >= 0) & (dv >= 0)
    if m.sum() < c:
        return math.inf
    off = np.maximum(np.abs(du[m]), np.abs(dv[m]))
    return float(np.partition(off, c - 1)[c - 1])


def yao_oracle(a):
    """Per quadrant, {source: target} by scanning; same tie rule as the library."""
    n = len(a)
    lex = np.empty(n, dtype=np.int64)
    lex[np.lexsort((a[:, 1], a[:, 0]))] = np.arange(n)
    out = [dict() for _ in range(4)]
    for i in range(n):
        dx = a[:, 0] - a[i, 0]
        dy = a[:, 1] - a[i, 1]
        d2 = dx * dx + dy * dy
        quads = ((dx >= 0) & (dy >= 0), (dx <= 0) & (dy >= 0),
                 (dx <= 0) & (dy <= 0), (dx >= 0) & (dy <= 0))
        for k in range(4):
            m = quads[k].copy()
            m[i] = False
            cand = np.flatnonzero(m)
            if len(cand):
                out[k][i] = int(cand[np.lexsort((lex[cand], d2[cand]))[0]])
    return out


def rmq_scan(values, i, j):
    best = i
    for t in range(i + 1, j + 1):
        if values[t] < values[best]:
            best = t
    return best


def region_claim_violations(cases, seed):
    """Check the six region claims on random (R, delta, p, q); returns (violations, premises hit)."""
    rng = np.random.default_rng(seed)
    bad = 0
    hits = [0] * 6
    for _ in range(cases):
        ax, ay = rng.uniform(-10, 10, 2)
        w, h = np.exp(rng.uniform(np.log(0.1), np.log(10), 2))
        R = Rect(float(ax), float(ax + w), float(ay), float(ay + h))
        delta = float(rng.uniform(0.001, 1.0) * R.shortest_side / 2)
        reg = compute_regions(R, delta)
        B, C = reg.B, reg.C
        # Claims 1-4: p left of q, |pq| < delta, p near R.
        p = Point(float(rng.uniform(R.ax - delta, R.bx + delta)), float(rng.uniform(R.ay - delta, R.by + delta)))
        ang = rng.uniform(-np.pi / 2, np.pi / 2)
        rad = rng.uniform(0, 1) * delta
        q = Point(p.x + float(rad * np.cos(ang)), p.y + float(rad * np.sin(ang)))
        if q.x >= p.x and distance(p, q) < delta:
            if quadrant_contains(p, 1, q) and p in B(1):
                hits[0] += 1
                bad += q not in R
            if quadrant_contains(p, 1, q) and q in B(3):
                hits[1] += 1
                bad += p not in R
            if quadrant_contains(p, 4, q) and p in B(4):
                hits[2] += 1
                bad += q not in R
            if quadrant_contains(p, 4, q) and q in B(2):
                hits[3] += 1
                bad += p not in R
        # Claims 5-6: p, q in R.
        p = Point(float(rng.uniform(R.ax, R.bx)), float(rng.uniform(R.ay, R.by)))
        q = Point(float(rng.uniform(R.ax, R.bx)), float(rng.uniform(R.ay, R.by)))
        if rng.random() < 0.5:  # place q close to p to stress the corner cases
            q = Point(min(R.bx, p.x + float(rng.uniform(-delta, delta))),
                      min(R.by, max(R.ay, p.y + float(rng.uniform(-delta, delta)))))
            q = Point(max(R.ax, q.x), q.y)
        if quadrant_contains(p, 1, q):
            hits[4] += 1
            bad += not (p in B(1) or q in B(3) or (p in C(2) and q in C(2)) or (p in C(4) and q in C(4)))
        if quadrant_contains(p, 4, q):
            hits[5] += 1
            bad += not (p in B(4) or q in B(2) or (p in C(1) and q in C(1)) or (p in C(3) and q in C(3)))
    return bad, hits


def packing_violations(instances, seed):
    """Packing claims: crowded rectangles and 5-point squares have small CPD."""
    rng = np.random.default_rng(seed)
    bad = 0
    for t in range(instances):
        f = float(np.exp(rng.uniform(0, np.log(8))))
        short = float(rng.uniform(0.5, 2))
        w, h = (short * f, short) if t % 2 else (short, short * f)
        R = Rect(0.0, w, 0.0, h)
        need = packing_threshold(R.aspect_ratio) + 1 + int(rng.integers(0, 4))
        if t % 4 < 2:
            inside = rng.random((need, 2)) * [w, h]
        else:
            # Spread-out jittered lattice: the hardest way to fit many points.
            cols = max(1, int(round(math.sqrt(need * w / h))))
            rows = -(-need // cols)
            gx, gy = np.meshgrid((np.arange(cols) + 0.5) / cols, (np.arange(rows) + 0.5) / rows)
            g = np.column_stack([gx.ravel(), gy.ravel()])[:need]
            g += rng.uniform(-0.5, 0.5, g.shape) * [1 / cols, 1 / rows]
            inside = np.clip(g, 0, 1) * [w, h]
        outside = rng.random((5, 2)) * [w, h] + [w + 1, 0]
        S = np.vstack([inside, outside])
        sel = S[(S[:, 0] <= w) & (S[:, 1] <= h)]
        assert len(sel) > packing_threshold(R.aspect_ratio)
        bad += not closest_pair_brute(sel).dist < R.shortest_side / 2
        # Square claim.
        side = float(rng.uniform(0.5, 2))
        k = 5 + int(rng.integers(0, 4))
        if t % 2:
            sq = rng.random((k, 2)) * side
        else:
            sq = np.vstack([[[0, 0], [side, 0], [0, side], [side, side]],
                            rng.random((k - 4, 2)) * side])
        bad += not closest_pair_brute(sq).dist < side
    return bad
