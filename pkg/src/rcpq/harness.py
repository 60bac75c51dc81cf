"""Oracle cross-checks and timing runs shared by the CLI and the test suite."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .closest_pair import PairResult, closest_pair_brute
from .datasets import generate, random_rects
from .geometry import Point, Rect
from .index import SMALL_PATH, RcpIndex


def oracle_query(points: Sequence[Point], rect: Rect) -> PairResult:
    return closest_pair_brute([p for p in points if rect.contains(p)])


@dataclass
class Mismatch:
    line: int
    rect: Rect
    got: tuple
    want: tuple


@dataclass
class VerifyReport:
    total: int
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        good = self.total - len(self.mismatches)
        return f"{good}/{self.total} {'OK' if self.ok else 'FAILED'}"


def verify(points: Sequence[Point], rects: Sequence[Rect], index: Optional[RcpIndex] = None,
           answer: Optional[Callable[[Rect], tuple]] = None, **build) -> VerifyReport:
    """Compare every query with the brute-force oracle, exactly.

    ``answer`` overrides the index lookup (used to exercise the mismatch path).
    """
    if answer is None:
        ix = index if index is not None else RcpIndex(points, **build)

        def answer(r):
            out = ix.query(r)
            return out.pair, out.dist
    report = VerifyReport(len(rects))
    for line, r in enumerate(rects, 1):
        want = oracle_query(points, r)
        got = answer(r)
        if got[0] != want.pair or not _same_dist(got[1], want.dist):
            report.mismatches.append(Mismatch(line, r, got, (want.pair, want.dist)))
    return report


def _same_dist(a: float, b: float) -> bool:
    return a == b or (math.isinf(a) and math.isinf(b))


# -- benchmark ---------------------------------------------------------------

def fatness_buckets(fmin: float, fmax: float) -> list[tuple[float, float]]:
    """Doubling buckets [1,2], [2,4], ... covering [fmin, fmax]."""
    if not (1.0 <= fmin <= fmax):
        raise ValueError("need 1 <= fmin <= fmax")
    out = []
    lo = fmin
    while True:
        hi = min(lo * 2, fmax)
        out.append((lo, hi))
        if hi >= fmax:
            return out
        lo = hi


@dataclass
class BenchRow:
    n: int
    build_s: float
    entries: int
    C: float
    f_lo: float
    f_hi: float
    queries: int
    median_query_us: float
    step1_share: float
    ratio: Optional[float] = None

    def tsv(self) -> str:
        ratio = "" if self.ratio is None else f"{self.ratio:.3f}"
        return (f"{self.n}\t{self.build_s:.4f}\t{self.entries}\t{self.C:.2f}\t"
                f"{self.f_lo:g}\t{self.f_hi:g}\t{self.queries}\t{self.median_query_us:.1f}\t"
                f"{self.step1_share:.3f}\t{ratio}")


BENCH_HEADER = ("n\tbuild_s\tentries\tC\tf_lo\tf_hi\tqueries\tmedian_query_us\t"
                "step1_share\tratio_vs_half_n")


def bench(sizes: Sequence[int], queries: int = 200, f_range: tuple[float, float] = (1.0, 2.0),
          seed: int = 0, side_range: tuple[float, float] = (0.05, 0.2), build_repeats: int = 1,
          c: int = 5, cascading: bool = True, rmq: str = "block",
          dist: str = "uniform", on_row: Optional[Callable[[BenchRow], None]] = None) -> list[BenchRow]:
    """Median build and query times for each size, split by fatness bucket."""
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    buckets = fatness_buckets(*f_range)
    rows: list[BenchRow] = []
    prev: dict[tuple[float, float], float] = {}
    for n in sizes:
        pts = generate(dist, n, seed)
        builds = []
        ix = None
        for _ in range(max(1, build_repeats)):
            t0 = time.perf_counter()
            ix = RcpIndex(pts, c=c, cascading=cascading, rmq=rmq)
            builds.append(time.perf_counter() - t0)
        entries = ix.stored_entries()
        C = entries / (n * math.log2(n)) if n > 1 else float("nan")
        for b, (lo, hi) in enumerate(buckets):
            rects = random_rects(queries, seed=seed * 1000 + b + 1, f_range=(lo, hi),
                                 side_range=side_range, margin=0.0)
            times = []
            small = 0
            for r in rects:
                t0 = time.perf_counter()
                out = ix.query(r)
                times.append(time.perf_counter() - t0)
                small += out.path == SMALL_PATH
            med = statistics.median(times) * 1e6 if times else float("nan")
            ratio = med / prev[(lo, hi)] if (lo, hi) in prev else None
            prev[(lo, hi)] = med
            row = BenchRow(n, statistics.median(builds), entries, C, lo, hi, len(rects), med,
                           small / max(1, len(rects)), ratio)
            rows.append(row)
            if on_row is not None:
                on_row(row)
    return rows
