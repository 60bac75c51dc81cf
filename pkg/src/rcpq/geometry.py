"""Planar points, closed axis-parallel rectangles and the query-time region partition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class Point(NamedTuple):
    x: float
    y: float


# Rectangles are closed boxes given as (ax, bx, ay, by); strips may be degenerate.
Box = tuple[float, float, float, float]

QUADRANTS = (1, 2, 3, 4)


def as_point(obj) -> Point:
    """Coerce a pair-like object to a Point, rejecting non-finite coordinates."""
    x, y = obj
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point coordinates must be finite, got ({x!r}, {y!r})")
    return Point(x, y)


def as_points(points: Iterable) -> list[Point]:
    return [as_point(p) for p in points]


def distance_sq(p: Sequence[float], q: Sequence[float]) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Euclidean distance |pq|.

    Computed as sqrt(dx*dx + dy*dy) so that the value is bitwise symmetric in
    its arguments and agrees everywhere the package derives a distance.
    """
    return math.sqrt(distance_sq(p, q))


def pair_key(p: Point, q: Point) -> tuple[Point, Point]:
    """The pair with its lexicographically smaller point first."""
    return (p, q) if p <= q else (q, p)


def quadrant_contains(p: Sequence[float], k: int, q: Sequence[float]) -> bool:
    """True iff q lies in the closed quadrant Q_k(p) (1=NE, 2=NW, 3=SW, 4=SE)."""
    if k == 1:
        return q[0] >= p[0] and q[1] >= p[1]
    if k == 2:
        return q[0] <= p[0] and q[1] >= p[1]
    if k == 3:
        return q[0] <= p[0] and q[1] <= p[1]
    if k == 4:
        return q[0] >= p[0] and q[1] <= p[1]
    raise ValueError(f"quadrant index must be 1..4, got {k!r}")


def packing_threshold(f: float) -> int:
    """Point count above which a rectangle of aspect ratio f has CPD < l/2."""
    if not f >= 1:
        raise ValueError(f"aspect ratio must be >= 1, got {f!r}")
    return 4 * math.ceil(4 * f)


@dataclass(frozen=True)
class Rect:
    """Closed rectangle [ax, bx] x [ay, by] with ax < bx and ay < by."""

    ax: float
    bx: float
    ay: float
    by: float

    def __post_init__(self):
        for name in ("ax", "bx", "ay", "by"):
            v = getattr(self, name)
            if math.isnan(v):
                raise ValueError(f"rectangle coordinate {name} is NaN")
        if not (self.ax < self.bx and self.ay < self.by):
            raise ValueError(
                f"degenerate rectangle: need ax < bx and ay < by, got "
                f"[{self.ax}, {self.bx}] x [{self.ay}, {self.by}]"
            )

    @classmethod
    def from_corners(cls, ax: float, ay: float, bx: float, by: float) -> "Rect":
        """Build from the 'ax ay bx by' order used by query files."""
        return cls(ax, bx, ay, by)

    @property
    def width(self) -> float:
        return self.bx - self.ax

    @property
    def height(self) -> float:
        return self.by - self.ay

    @property
    def shortest_side(self) -> float:
        return min(self.width, self.height)

    @property
    def aspect_ratio(self) -> float:
        w, h = self.width, self.height
        return max(w, h) / min(w, h)

    @property
    def box(self) -> Box:
        return (self.ax, self.bx, self.ay, self.by)

    def contains(self, p: Sequence[float]) -> bool:
        return self.ax <= p[0] <= self.bx and self.ay <= p[1] <= self.by

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def is_subset_of(self, other: "Rect") -> bool:
        return (other.ax <= self.ax and self.bx <= other.bx
                and other.ay <= self.ay and self.by <= other.by)


def box_contains(box: Box, p: Sequence[float]) -> bool:
    ax, bx, ay, by = box
    return ax <= p[0] <= bx and ay <= p[1] <= by


@dataclass(frozen=True)
class RegionSet:
    """Corner squares C1..C4, shrunken rectangles B1..B4 and strips A1..A5.

    C1 is the top-right corner square, C2 top-left, C3 bottom-left and C4
    bottom-right. B_k is the parent rectangle with the two delta-strips
    adjacent to C_k's diagonal opposite removed:

        B1 = C3 u A2 u A3 u A5    (bottom-left part)
        B2 = C4 u A3 u A4 u A5    (bottom-right part)
        B3 = C1 u A1 u A3 u A4    (top-right part)
        B4 = C2 u A1 u A2 u A3    (top-left part)

    A1 is the top strip, A2 the left strip, A3 the centre, A4 the right strip
    and A5 the bottom strip. Strips are plain boxes since they collapse to
    zero width when delta equals half the shortest side.
    """

    delta: float
    corners: tuple[Rect, Rect, Rect, Rect]
    shrunk: tuple[Rect, Rect, Rect, Rect]
    strips: tuple[Box, Box, Box, Box, Box]

    def C(self, k: int) -> Rect:
        return self.corners[k - 1]

    def B(self, k: int) -> Rect:
        return self.shrunk[k - 1]

    def A(self, i: int) -> Box:
        return self.strips[i - 1]


def compute_regions(rect: Rect, delta: float) -> RegionSet:
    ell = rect.shortest_side
    if not (0 < delta <= ell / 2):
        raise ValueError(f"delta must satisfy 0 < delta <= {ell / 2!r}, got {delta!r}")
    ax, bx, ay, by = rect.box
    x1, x2 = ax + delta, bx - delta
    y1, y2 = ay + delta, by - delta
    corners = (
        Rect(x2, bx, y2, by),
        Rect(ax, x1, y2, by),
        Rect(ax, x1, ay, y1),
        Rect(x2, bx, ay, y1),
    )
    shrunk = (
        Rect(ax, x2, ay, y2),
        Rect(x1, bx, ay, y2),
        Rect(x1, bx, y1, by),
        Rect(ax, x2, y1, by),
    )
    strips = (
        (x1, x2, y2, by),
        (ax, x1, y1, y2),
        (x1, x2, y1, y2),
        (x2, bx, y1, y2),
        (x1, x2, ay, y1),
    )
    return RegionSet(delta, corners, shrunk, strips)


def bounding_rect(points: Sequence[Sequence[float]], pad: float = 0.0) -> Rect:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return Rect(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)
