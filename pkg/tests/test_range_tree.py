import math

import numpy as np
import pytest

from oracles import rect_mask
from rcpq.datasets import random_rects
from rcpq.geometry import Point, Rect
from rcpq.range_tree import GeneralPositionError, RangeTree, rt_build


def _random_tree(n, seed, weights=False, **kw):
    rng = np.random.default_rng(seed)
    a = rng.random((n, 2))
    w = rng.random(n) if weights else None
    return a, w, RangeTree([tuple(p) for p in a], w, **kw)


def test_structure_four_points():
    pts = [(1, 4), (2, 1), (3, 3), (4, 2)]
    t = rt_build(pts)
    assert t.n == 4 and t.height == 2
    assert len(t.orders[-1]) == 4
    root = [t.points[i] for i in t.ids_by_rank[t.orders[0]]]
    assert root == sorted(t.points, key=lambda p: p.y)


def test_duplicate_coordinate_named():
    with pytest.raises(GeneralPositionError) as exc:
        rt_build([(1, 5), (2, 1), (1, 3)])
    assert exc.value.axis == "x"
    assert set(exc.value.points) == {(1.0, 5.0), (1.0, 3.0)}
    assert "(1.0, 5.0)" in str(exc.value) and "(1.0, 3.0)" in str(exc.value)
    with pytest.raises(GeneralPositionError):
        rt_build([(1, 5), (2, 5)])


@pytest.mark.parametrize("cascading", [True, False])
def test_canonical_partition_1024(cascading):
    a, _, t = _random_tree(1024, 0, cascading=cascading)
    for r in random_rects(100, seed=1, side_range=(0.01, 1)):
        nodes = t.canonical_rect(r)
        ids = np.concatenate([t.ids_by_rank[t.orders[d][lo:hi]] for d, lo, hi in nodes]) \
            if nodes else np.zeros(0, int)
        want = np.flatnonzero(rect_mask(a, r))
        assert sorted(ids.tolist()) == want.tolist()  # no point twice, none missing
        # Canonical nodes are whole subtrees' key ranges at O(log n) nodes.
        assert len(nodes) <= 2 * (t.height + 1)


def test_report_and_count_basics():
    a, _, t = _random_tree(300, 3)
    assert t.report(Rect(2, 3, 2, 3)) == [] and t.count(Rect(2, 3, 2, 3)) == 0
    full = Rect(-1, 2, -1, 2)
    assert sorted(t.report(full)) == sorted(t.points)
    assert t.count(full) == 300


def test_empty_and_singleton():
    t = rt_build([])
    assert t.count(Rect(0, 1, 0, 1)) == 0 and t.report(Rect(0, 1, 0, 1)) == []
    t = rt_build([(0.5, 0.5)], [3.0])
    assert t.min_weight(Rect(0, 1, 0, 1)) == (3.0, Point(0.5, 0.5))
    assert t.min_weight(Rect(0.6, 1, 0, 1)) is None


@pytest.mark.parametrize("cascading", [True, False])
def test_report_count_random(cascading):
    for n in (2, 3, 5, 8, 33, 1000):
        a, _, t = _random_tree(n, n, cascading=cascading)
        for r in random_rects(200, seed=n, side_range=(0.01, 1)):
            want = sorted(Point(*p) for p in a[rect_mask(a, r)])
            got = t.report(r)
            assert sorted(got) == want
            assert t.count(r) == len(got)


def test_min_weight_example():
    t = rt_build([(1, 1), (2, 3), (4, 0.5)], [5, 2, 7])
    assert t.min_weight(Rect(0, 3, 0, 4)) == (2, Point(2, 3))
    assert t.min_weight(Rect(10, 11, 10, 11)) is None


def test_min_weight_requires_weights():
    t = rt_build([(1, 1), (2, 3)])
    with pytest.raises(ValueError):
        t.min_weight(Rect(0, 3, 0, 4))


@pytest.mark.parametrize("rmq", ["block", "sparse"])
@pytest.mark.parametrize("cascading", [True, False])
def test_min_weight_random_2048(rmq, cascading):
    a, w, t = _random_tree(2048, 11, weights=True, rmq=rmq, cascading=cascading)
    for r in random_rects(200, seed=4, side_range=(0.005, 1)):
        m = rect_mask(a, r)
        got = t.min_weight(r)
        if not m.any():
            assert got is None
            continue
        idx = np.flatnonzero(m)
        best = idx[np.argmin(w[idx])]
        assert got == (w[best], Point(*a[best]))
        assert got[1] in r


def test_min_weight_ties_stay_inside():
    rng = np.random.default_rng(5)
    a = rng.random((500, 2))
    w = rng.integers(0, 3, 500).astype(float)
    t = RangeTree([tuple(p) for p in a], w)
    for r in random_rects(200, seed=6, side_range=(0.01, 1)):
        m = rect_mask(a, r)
        got = t.min_weight(r)
        if m.any():
            assert got[0] == w[m].min() and got[1] in r


def test_linear_key():
    rng = np.random.default_rng(8)
    a = rng.random((200, 2))
    t = RangeTree([tuple(p) for p in a], key=(-1.0, 1.0))
    # Points with x >= 0.3 and y - x >= 0.1.
    nodes = t.canonical(0.3, math.inf, 0.1, math.inf)
    ids = sorted(t.ids_by_rank[t.orders[d][lo:hi]].tolist() for d, lo, hi in nodes)
    got = sorted(i for grp in ids for i in grp)
    want = np.flatnonzero((a[:, 0] >= 0.3) & (a[:, 1] - a[:, 0] >= 0.1)).tolist()
    assert got == want


def test_stored_entries_n_log_n():
    for n in (1024, 8192):
        _, _, t = _random_tree(n, 0, weights=True)
        assert t.stored_entries() <= 16 * n * math.log2(n)
