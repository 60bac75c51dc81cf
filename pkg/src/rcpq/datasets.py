"""Seeded point sets and query rectangles, plus the plain-text file formats."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .analysis import gen_lower_bound_instance
from .geometry import Point, Rect

DISTRIBUTIONS = ("uniform", "clustered", "circle-pair", "grid")


class InputError(ValueError):
    """Malformed points or queries file."""


def _distinct(pts: np.ndarray, redraw, rng) -> np.ndarray:
    """Redraw rows until no x and no y value repeats; deterministic for a seed."""
    for _ in range(1000):
        bad = np.zeros(len(pts), dtype=bool)
        for col in (0, 1):
            _, first = np.unique(pts[:, col], return_index=True)
            dup = np.ones(len(pts), dtype=bool)
            dup[first] = False
            bad |= dup
        if not bad.any():
            return pts
        pts[bad] = redraw(int(bad.sum()), rng)
    raise RuntimeError("could not draw distinct coordinates")


def generate(dist: str, n: int, seed: int = 0) -> list[Point]:
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = np.random.default_rng(seed)
    if dist == "uniform":
        draw = lambda m, r: r.random((m, 2))  # noqa: E731
        pts = draw(n, rng)
    elif dist == "clustered":
        k = max(1, int(math.sqrt(n) / 2))
        centres = rng.random((k, 2))
        spread = 0.02

        def draw(m, r):
            c = centres[r.integers(0, k, size=m)]
            return c + r.normal(0.0, spread, size=(m, 2))
        pts = draw(n, rng)
    elif dist == "circle-pair":
        if n == 0:
            return []
        m = n + (n % 2)
        pts = gen_lower_bound_instance(max(m, 4), 1e-3, seed)
        return pts[:n]
    elif dist == "grid":
        side = max(1, math.ceil(math.sqrt(n)))
        i, j = np.divmod(np.arange(n), side)
        # A slight shear keeps every x and every y distinct.
        eps = 1.0 / (side * side + 1)
        pts = np.column_stack([i + j * eps, j + i * eps]).astype(np.float64) / side
        return [Point(float(x), float(y)) for x, y in pts]
    else:
        raise ValueError(f"unknown distribution {dist!r}; choose from {', '.join(DISTRIBUTIONS)}")
    pts = _distinct(np.asarray(pts, dtype=np.float64), draw, rng)
    return [Point(float(x), float(y)) for x, y in pts]


def jitter(points: Sequence[Point], eps: float, seed: int = 0) -> list[Point]:
    """Shift every coordinate by a seeded uniform offset in [-eps, eps]."""
    rng = np.random.default_rng(seed)
    arr = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    arr = arr + rng.uniform(-eps, eps, size=arr.shape)
    return [Point(float(x), float(y)) for x, y in arr]


def random_rects(count: int, seed: int = 0, f_range: tuple[float, float] = (1.0, 64.0),
                 side_range: tuple[float, float] = (0.005, 1.0),
                 domain: Rect = Rect(0.0, 1.0, 0.0, 1.0), margin: float = 0.1) -> list[Rect]:
    """Rectangles with log-uniform aspect ratio and shortest side.

    Sides are relative to the domain's width; placement lets rectangles
    stick out of the domain by ``margin`` so boundary cases get exercised.
    """
    rng = np.random.default_rng(seed)
    span = domain.width
    fmin, fmax = f_range
    smin, smax = side_range
    out = []
    for _ in range(count):
        f = math.exp(rng.uniform(math.log(fmin), math.log(fmax))) if fmax > fmin else fmin
        short = span * math.exp(rng.uniform(math.log(smin), math.log(smax)))
        w, h = (short * f, short) if rng.random() < 0.5 else (short, short * f)
        ax = domain.ax - margin * span + rng.random() * (span * (1 + 2 * margin) - min(w, span) * 0.5)
        ay = domain.ay - margin * span + rng.random() * (span * (1 + 2 * margin) - min(h, span) * 0.5)
        out.append(Rect(ax, ax + w, ay, ay + h))
    return out


# -- files -------------------------------------------------------------------

def _data_lines(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_points(lines: Iterable[str], name: str = "<points>") -> list[Point]:
    pts = []
    for lineno, fields in _data_lines(lines):
        if len(fields) != 2:
            raise InputError(f"{name}:{lineno}: expected 'x y', got {len(fields)} fields")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise InputError(f"{name}:{lineno}: not a number in {' '.join(fields)!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"{name}:{lineno}: coordinates must be finite")
        pts.append(Point(x, y))
    return pts


def parse_queries(lines: Iterable[str], name: str = "<queries>") -> list[Rect]:
    rects = []
    for lineno, fields in _data_lines(lines):
        if len(fields) != 4:
            raise InputError(f"{name}:{lineno}: expected 'ax ay bx by', got {len(fields)} fields")
        try:
            ax, ay, bx, by = (float(v) for v in fields)
        except ValueError:
            raise InputError(f"{name}:{lineno}: not a number in {' '.join(fields)!r}") from None
        if not all(math.isfinite(v) for v in (ax, ay, bx, by)):
            raise InputError(f"{name}:{lineno}: coordinates must be finite")
        if not (ax < bx and ay < by):
            raise InputError(f"{name}:{lineno}: need ax < bx and ay < by")
        rects.append(Rect(ax, bx, ay, by))
    return rects


def format_points(points: Sequence[Point], header: str = "") -> str:
    out = [f"# {header}".rstrip() + "\n"] if header else []
    out.extend(f"{p.x!r} {p.y!r}\n" for p in points)
    return "".join(out)


def format_queries(rects: Sequence[Rect]) -> str:
    return "".join(f"{r.ax!r} {r.ay!r} {r.bx!r} {r.by!r}\n" for r in rects)
