import math

import numpy as np
import pytest

from oracles import anchored_side_oracle
from rcpq.anchored_square import (ORIENTATIONS, AnchoredSquares, ConeTree, anchored_side_scan,
                                  as_build, as_query, normalize_orientation)
from rcpq.range_tree import GeneralPositionError, RangeTree

DIAG = [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]


def test_diagonal_example():
    s = as_build(DIAG, c=5)
    assert as_query(s, (0, 0), "↗").side == 5
    assert as_query(s, (0, 0), "NE").side == 5


def test_too_few_points_gives_infinity():
    s = as_build(DIAG[:-1], c=5)
    assert as_query(s, (0, 0), "↗").side == math.inf


def test_single_point_c1():
    s = as_build([(3, 4)], c=1)
    assert s.side((0, 0), "NE") == 4
    assert s.side((0, 0), "SW") == math.inf
    assert s.side((5, 0), "NW") == 4
    res = s.query((0, 0), "NE")
    assert (3.0, 4.0) in res.support


def test_empty_set():
    s = as_build([], c=5)
    for o in ORIENTATIONS:
        assert s.side((0.3, 0.2), o) == math.inf


def test_validation():
    with pytest.raises(ValueError):
        as_build(DIAG, c=0)
    with pytest.raises(GeneralPositionError):
        as_build([(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        normalize_orientation("up")
    assert normalize_orientation("↘") == "SE"


def test_suffix_minima_match_scan():
    rng = np.random.default_rng(0)
    n, c = 300, 5
    u, v = rng.random(n), rng.random(n)
    key, weight = v - u, v
    cone = ConeTree(u, key, weight, c)
    ref = RangeTree.from_arrays(u, key)
    for d, level in enumerate(cone.suffix_min):
        size = 1 << (ref.height - d)
        order = ref.ids_by_rank[ref.orders[d]]
        for s in range(0, n, size):
            e = min(s + size, n)
            for i in range(s, e):
                suffix = order[i:e]
                want = suffix[np.argsort(weight[suffix], kind="stable")[:c]].tolist()
                got = [j for j in level[i].tolist() if j >= 0]
                assert got == want


def test_cone_lowest_matches_scan():
    rng = np.random.default_rng(1)
    n, c = 400, 5
    a = rng.random((n, 2))
    u, v = a[:, 0], a[:, 1]
    vd = ConeTree(u, v - u, v, c)
    dh = ConeTree(v, u - v, u, c)
    for qu, qv in rng.random((200, 2)) * 1.2 - 0.1:
        in_vd = np.flatnonzero((u >= qu) & (v - u >= qv - qu))
        in_dh = np.flatnonzero((v >= qv) & (v - u < qv - qu))
        want_vd = in_vd[np.argsort(v[in_vd])[:c]]
        want_dh = in_dh[np.argsort(u[in_dh])[:c]]
        assert sorted(vd.lowest(qu, qv - qu)) == sorted(want_vd.tolist())
        assert sorted(dh.lowest(qv, qu - qv, strict_low=True)) == sorted(want_dh.tolist())
        # The cones split the closed quadrant with no overlap.
        quad = np.flatnonzero((u >= qu) & (v >= qv))
        assert sorted(in_vd.tolist() + in_dh.tolist()) == quad.tolist()


@pytest.mark.parametrize("cascading", [True, False])
def test_512_random_against_scan(cascading):
    rng = np.random.default_rng(2)
    a = rng.random((512, 2))
    s = AnchoredSquares([tuple(p) for p in a], c=5, cascading=cascading)
    for t in range(100):
        q = tuple(rng.random(2) * 1.2 - 0.1)
        if t % 4 == 0:
            q = tuple(a[rng.integers(512)])  # anchored on a data point
        o = list(ORIENTATIONS)[t % 4]
        want = anchored_side_oracle(a, q, ORIENTATIONS[o], 5)
        assert s.side(q, o) == want
        assert anchored_side_scan([tuple(p) for p in a], q, o, 5) == want


def test_orientation_symmetry():
    rng = np.random.default_rng(3)
    a = rng.random((300, 2))
    s = AnchoredSquares([tuple(p) for p in a])
    for o, (sx, sy) in ORIENTATIONS.items():
        mirrored = AnchoredSquares([(sx * x, sy * y) for x, y in a])
        for q in rng.random((50, 2)):
            assert s.side(tuple(q), o) == mirrored.side((sx * q[0], sy * q[1]), "NE")


def test_monotone_in_c():
    rng = np.random.default_rng(4)
    a = [tuple(p) for p in rng.random((200, 2))]
    builds = [AnchoredSquares(a, c=c) for c in range(1, 8)]
    for q in rng.random((60, 2)):
        for o in ORIENTATIONS:
            sides = [b.side(tuple(q), o) for b in builds]
            assert sides == sorted(sides)


def test_support_has_at_most_2c_points():
    rng = np.random.default_rng(5)
    s = AnchoredSquares([tuple(p) for p in rng.random((200, 2))], c=5)
    for q in rng.random((30, 2)):
        assert len(s.query(tuple(q), "SW").support) <= 10
