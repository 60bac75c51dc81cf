"""rcpq command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import analysis
from .datasets import (DISTRIBUTIONS, InputError, format_points, generate, jitter,
                       parse_points, parse_queries, random_rects)
from .geometry import Rect, bounding_rect
from .harness import BENCH_HEADER, bench, verify
from .index import RcpIndex
from .range_tree import GeneralPositionError
from .yao import yao_build

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _read_points(path: str, args) -> list:
    if path == "-":
        pts = parse_points(sys.stdin, "<stdin>")
    else:
        with open(path, encoding="utf-8") as fh:
            pts = parse_points(fh, path)
    if args.jitter:
        pts = jitter(pts, args.jitter, args.seed)
    return pts


def _read_queries(path: str) -> list[Rect]:
    with open(path, encoding="utf-8") as fh:
        return parse_queries(fh, path)


def _build(points, args) -> RcpIndex:
    return RcpIndex(points, c=args.c, cascading=args.cascading == "on")


def _query_domain(points) -> Rect:
    if len(points) < 2:
        return Rect(0.0, 1.0, 0.0, 1.0)
    r = bounding_rect(points)
    side = max(r.width, r.height)
    return Rect(r.ax, r.ax + side, r.ay, r.ay + side)


def format_answer(pair, dist: float, path: str) -> str:
    if pair is None:
        return f"NONE {path}"
    (p, q) = pair
    return " ".join([_fmt(dist), _fmt(p.x), _fmt(p.y), _fmt(q.x), _fmt(q.y), path])


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    pts = generate(args.dist, args.n, args.seed)
    if args.jitter:
        pts = jitter(pts, args.jitter, args.seed)
    header = f"rcpq gen dist={args.dist} n={args.n} seed={args.seed}"
    fh, close = _open_out(args.out)
    try:
        fh.write(format_points(pts, header))
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_query(args) -> int:
    pts = _read_points(args.points, args)
    rects = _read_queries(args.queries)
    ix = _build(pts, args)
    fh, close = _open_out(args.out)
    try:
        for r in rects:
            out = ix.query(r)
            fh.write(format_answer(out.pair, out.dist, out.path) + "\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.points is not None:
        pts = _read_points(args.points, args)
    else:
        pts = generate(args.dist, args.n, args.seed)
        if args.jitter:
            pts = jitter(pts, args.jitter, args.seed)
    if args.queries is not None:
        rects = _read_queries(args.queries)
    else:
        rects = random_rects(args.random, seed=args.seed, f_range=(1.0, args.fmax),
                             domain=_query_domain(pts))
    ix = _build(pts, args)
    report = verify(pts, rects, index=ix, answer=_faulty(ix) if args.inject_fault else None)
    print(report.summary())
    for m in report.mismatches[:args.show]:
        r = m.rect
        print(f"mismatch at query {m.line}: rect {_fmt(r.ax)} {_fmt(r.ay)} {_fmt(r.bx)} {_fmt(r.by)}")
        print(f"  index:  {format_answer(m.got[0], m.got[1], '').rstrip()}  ({m.got[1]!r})")
        print(f"  oracle: {format_answer(m.want[0], m.want[1], '').rstrip()}  ({m.want[1]!r})")
    return EXIT_OK if report.ok else EXIT_FAIL


def _faulty(ix: RcpIndex):
    # Test hook: nudges every reported distance by one ulp.
    def answer(r):
        out = ix.query(r)
        return out.pair, (math.nextafter(out.dist, math.inf) if out.pair else out.dist)
    return answer


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for tok in text.split(","):
        tok = tok.strip()
        if "^" in tok:
            base, exp = tok.split("^")
            sizes.append(int(base) ** int(exp))
        else:
            sizes.append(int(tok))
    return sizes


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    fh, close = _open_out(args.out)
    try:
        fh.write(BENCH_HEADER + "\n")
        fh.flush()

        def emit(row):
            fh.write(row.tsv() + "\n")
            fh.flush()
        rows = bench(sizes, args.queries, (args.fmin, args.fmax), args.seed,
                     build_repeats=args.build_repeats, c=args.c,
                     cascading=args.cascading == "on", rmq=args.rmq, dist=args.dist, on_row=emit)
        Cs = [r.C for r in rows if not math.isnan(r.C)]
        if Cs:
            fh.write(f"# C max={max(Cs):.2f} first={Cs[0]:.2f} drift={max(Cs) / Cs[0]:.3f}\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.which == "lower-bound":
        n = args.n if args.n is not None else 64
        _, verified = analysis.lower_bound_candidates(n, args.f, args.arc, args.seed)
        target = (n // 2) ** 2
        print(f"n\tf\tcross_pairs\tverified\n{n}\t{args.f:g}\t{target}\t{len(verified)}")
        print(f"{len(verified)} candidate pairs verified")
        return EXIT_OK if len(verified) >= target else EXIT_FAIL

    if args.points is not None:
        pts = _read_points(args.points, args)
    else:
        pts = generate(args.dist, args.n if args.n is not None else 128, args.seed)
    pairs, failures = analysis.square_candidate_check(pts, args.trials, args.seed, args.k)
    label = f"Del□(S,{args.k})"
    print(f"n\tpairs\tfailures\n{len(pts)}\t{len(pairs)}\t{len(failures)}")
    print(f"{len(pairs)} candidate pair{'s' if len(pairs) != 1 else ''} found")
    if failures:
        print(f"{len(failures)} pairs not in {label}")
        for p, q in failures[:10]:
            print(f"  {_fmt(p.x)} {_fmt(p.y)} {_fmt(q.x)} {_fmt(q.y)}")
        return EXIT_FAIL
    print(f"all pairs in {label}")
    return EXIT_OK


def cmd_yao(args) -> int:
    pts = _read_points(args.points, args)
    fh, close = _open_out(args.out)
    try:
        fh.write(yao_build(pts).dump())
    finally:
        if close:
            fh.close()
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--c", type=int, default=5, help="anchored-square point count (default 5)")
    common.add_argument("--cascading", choices=("on", "fallback"), default="on",
                        help="fractional cascading or per-node binary search")
    common.add_argument("--jitter", type=float, default=0.0, metavar="EPS",
                        help="perturb input coordinates by up to EPS to break ties")

    parser = argparse.ArgumentParser(prog="rcpq", description="Range closest-pair queries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a seeded point set")
    p.add_argument("dist", choices=DISTRIBUTIONS)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--out", "-o", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("query", parents=[common], help="answer a batch of rectangle queries")
    p.add_argument("points")
    p.add_argument("queries")
    p.add_argument("--out", "-o", default="-")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", parents=[common], help="cross-check queries against brute force")
    p.add_argument("points", nargs="?", help="points file (default: generate --n points)")
    p.add_argument("queries", nargs="?", help="queries file (default: --random rectangles)")
    p.add_argument("--n", type=_nonneg_int, default=1024)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--random", type=_nonneg_int, default=1000, help="number of random rectangles")
    p.add_argument("--fmax", type=float, default=64.0, help="largest aspect ratio drawn")
    p.add_argument("--show", type=int, default=5, help="mismatches to print")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time build and queries over sizes")
    p.add_argument("--sizes", default="2^12,2^13,2^14,2^15,2^16,2^17",
                   help="comma-separated ascending sizes; 2^k allowed")
    p.add_argument("--queries", type=_nonneg_int, default=200, help="queries per size and bucket")
    p.add_argument("--fmin", type=float, default=1.0)
    p.add_argument("--fmax", type=float, default=2.0)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--rmq", choices=("block", "sparse"), default="block")
    p.add_argument("--build-repeats", type=int, default=1)
    p.add_argument("--out", "-o", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("experiment", parents=[common], help="candidate-pair experiments")
    p.add_argument("which", choices=("lower-bound", "square-candidates"))
    p.add_argument("--n", type=_nonneg_int, default=None,
                   help="instance size (64 for lower-bound, 128 for square-candidates)")
    p.add_argument("--f", type=float, default=1.1, help="aspect-ratio bound (lower-bound)")
    p.add_argument("--arc", type=float, default=1e-3, help="angular spread (lower-bound)")
    p.add_argument("--points", help="points file (square-candidates)")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--trials", type=_nonneg_int, default=200)
    p.add_argument("--k", type=_nonneg_int, default=2)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("yao", parents=[common], help="dump the quadrant Yao graph edges")
    p.add_argument("points")
    p.add_argument("--out", "-o", default="-")
    p.set_defaults(func=cmd_yao)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeneralPositionError as exc:
        print(f"rcpq: error: {exc} (try --jitter)", file=sys.stderr)
    except (InputError, ValueError, OSError) as exc:
        print(f"rcpq: error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
