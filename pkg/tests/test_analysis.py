import math
import time

import numpy as np
import pytest

from rcpq.analysis import (del_square_edge, del_square_edge_count, gen_lower_bound_instance,
                           is_candidate_witness, loglog_slope, lower_bound_candidates,
                           square_candidate_check, square_candidate_survey)
from rcpq.datasets import generate
from rcpq.geometry import Point


def test_lower_bound_instance_shape():
    pts = gen_lower_bound_instance(4, 1e-3)
    a = math.sqrt(2) / 2
    assert len(pts) == 4
    for p in pts:
        assert abs(math.hypot(p.x, p.y) - 1) < 1e-12
    assert sum(p.x > 0 for p in pts) == 2
    for p in pts:
        near = (a, a) if p.x > 0 else (-a, -a)
        assert math.dist(p, near) < 2e-3
    big = gen_lower_bound_instance(128, 1e-3, seed=4)
    assert len({p.x for p in big}) == 128 and len({p.y for p in big}) == 128


@pytest.mark.parametrize("bad", [dict(n=2), dict(n=7), dict(n=8, arc=0), dict(n=8, arc=0.02)])
def test_lower_bound_instance_bounds(bad):
    with pytest.raises(ValueError):
        gen_lower_bound_instance(**{"arc": 1e-3, **bad})


def test_lower_bound_1024_pairs():
    t0 = time.perf_counter()
    pts, verified = lower_bound_candidates(64, 1.1)
    assert len(verified) == 1024 == (64 // 2) ** 2
    assert time.perf_counter() - t0 < 30
    for w in verified[:50]:
        inside = [p for p in pts if w.rect.contains(p)]
        assert sorted(inside) == sorted(w.pair)
        assert w.rect.aspect_ratio <= 1.1


def test_witness_examples():
    w = is_candidate_witness((0, 0), (1, 1.05), [(0, 0), (1, 1.05)], 1.1)
    assert w is not None and w.pair == (Point(0, 0), Point(1, 1.05))
    assert is_candidate_witness((0, 0), (1, 1), [(0, 0), (1, 1), (0.5, 0.5)], 1.1) is None
    assert is_candidate_witness((0, 0), (1, 2), [(0, 0), (1, 2)], 1.1) is None


def test_del_square_examples():
    assert del_square_edge((0, 0), (1, 1), [(0, 0), (1, 1)], 0)
    S = [(0, 0), (2, 2), (1, 1)]
    assert not del_square_edge((0, 0), (2, 2), S, 0)
    assert del_square_edge((0, 0), (2, 2), S, 1)
    with pytest.raises(ValueError):
        del_square_edge((0, 0), (0, 0), S, 1)


def sweep_edge(p, q, pts, k):
    """Integer-lattice square sweep; exact for integer inputs since every
    critical square of the arrangement has integer corner and side."""
    a = np.asarray(pts, dtype=float)
    span = int(a.max() - a.min()) + 1
    lo = int(a.min()) - span
    free = np.arange(lo, int(a.max()) + 1, dtype=float)
    others = a[~((a == p).all(axis=1) | (a == q).all(axis=1))]
    for s in range(1, span + 1):
        cands = []
        for L in (p[0], p[0] - s):
            cands.append(np.column_stack([np.full_like(free, L), free]))
        for B in (p[1], p[1] - s):
            cands.append(np.column_stack([free, np.full_like(free, B)]))
        sq = np.vstack(cands)
        L, B = sq[:, 0], sq[:, 1]

        def on_boundary(pt):
            inside = (L <= pt[0]) & (pt[0] <= L + s) & (B <= pt[1]) & (pt[1] <= B + s)
            edge = (pt[0] == L) | (pt[0] == L + s) | (pt[1] == B) | (pt[1] == B + s)
            return inside & edge
        ok = on_boundary(p) & on_boundary(q)
        if not ok.any():
            continue
        L, B = L[ok], B[ok]
        interior = ((others[None, :, 0] > L[:, None]) & (others[None, :, 0] < L[:, None] + s)
                    & (others[None, :, 1] > B[:, None]) & (others[None, :, 1] < B[:, None] + s))
        if (interior.sum(axis=1) <= k).any():
            return True
    return False


@pytest.mark.parametrize("seed,n", [(0, 12), (1, 12), (2, 20)])
def test_del_square_matches_sweep(seed, n):
    rng = np.random.default_rng(seed)
    pts = [tuple(p) for p in np.unique(rng.integers(0, 16, size=(n, 2)).astype(float), axis=0)]
    outcomes = set()
    for k in (0, 1, 2):
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                got = del_square_edge(pts[i], pts[j], pts, k)
                assert got == sweep_edge(np.array(pts[i]), np.array(pts[j]), pts, k)
                outcomes.add(got)
    assert outcomes == {True, False}


def test_survey_two_points():
    pairs, count = square_candidate_survey([(0, 0), (1, 3)], trials=20)
    assert count == 1 and pairs == {(Point(0, 0), Point(1, 3))}


def test_survey_pairs_are_del2_edges_n128():
    pts = generate("uniform", 128, seed=7)
    pairs, failures = square_candidate_check(pts, trials=200, seed=7)
    assert len(pairs) > 128 and failures == []


def test_survey_count_grows_linearly():
    sizes = [64, 128, 256]
    counts = [square_candidate_survey(generate("uniform", n, seed=3), 200, 3)[1] for n in sizes]
    assert loglog_slope(sizes, counts) <= 2.0


def test_del2_edge_count_linear():
    pts = generate("uniform", 40, seed=1)
    m = del_square_edge_count(pts, 2)
    assert len(pts) - 1 <= m <= 18 * 4 * len(pts)
