"""Command line entry point: ``qhv compute|estimate|gen|bench|scaling``."""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .bench import ALGOS, AlgoOptions, InsufficientDataError, bench, fit_scaling, read_csv, run_algo, write_csv
from .data import FAMILIES, FrontFormatError, GenSpec, gen_front, read_fronts, write_fronts
from .geometry import canonicalize
from .oracles import McConfig, mc_estimate


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _add_front_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="front file ('-' for stdin)")
    p.add_argument("--ref", type=_floats, help="reference point, e.g. '0,0,0' (default: origin when maximizing)")
    p.add_argument("--upper", type=_floats, help="upper frame corner (default: from the points)")
    p.add_argument("--orientation", choices=("maximize", "minimize"), default="maximize")


def _add_mc_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-samples", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhv", description="Exact and estimated hypervolumes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="volume of every front in a file")
    _add_front_args(p)
    p.add_argument("--algo", choices=ALGOS, default="qhv")
    p.add_argument("--base-threshold", type=int, default=10)
    _add_mc_args(p)

    p = sub.add_parser("estimate", help="Karp-Luby estimate of every front in a file")
    _add_front_args(p)
    _add_mc_args(p)

    p = sub.add_parser("gen", help="write synthetic fronts")
    p.add_argument("--family", choices=FAMILIES, default="spherical")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="fronts to write (seeds seed, seed+1, ...)")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("bench", help="timing CSV over generated fronts and/or files")
    p.add_argument("files", nargs="*", help="front files to include")
    p.add_argument("--family", action="append", choices=FAMILIES, help="repeatable; default spherical")
    p.add_argument("--d", type=_ints, default=None, help="dimensions, e.g. '3,5'")
    p.add_argument("--n", type=_ints, default=None, help="point counts, e.g. '100,200,400'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", action="append", choices=ALGOS, help="repeatable; default qhv")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--base-threshold", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("-o", "--output", required=True, help="CSV path")

    p = sub.add_parser("scaling", help="fit the running-time exponent from a bench CSV")
    p.add_argument("csv")
    p.add_argument("--family", default="spherical")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--algo", choices=ALGOS, default="qhv")
    return parser


def _load(args):
    src = sys.stdin if args.input == "-" else args.input
    return read_fronts(src)


def _frame_front(raw: np.ndarray, args):
    d = raw.shape[1]
    ref = args.ref
    if ref is None:
        if args.orientation == "minimize":
            raise ValueError("--ref is required with --orientation minimize")
        ref = [0.0] * d
    if len(ref) != d:
        raise ValueError(f"--ref has {len(ref)} coordinates, front has {d}")
    return canonicalize(raw, ref, args.orientation, upper=args.upper)


def _mc_config(args) -> McConfig:
    return McConfig(args.epsilon, args.delta, args.seed, getattr(args, "max_samples", None))


def cmd_compute(args) -> int:
    fronts = _load(args)
    opts = AlgoOptions(args.base_threshold, _mc_config(args))
    failed = 0
    for i, raw in enumerate(fronts):
        try:
            front = _frame_front(raw, args)
            start = time.perf_counter()
            value, _ = run_algo(args.algo, front, opts)
            seconds = time.perf_counter() - start
        except Exception as exc:
            failed += 1
            print(f"front {i}: {type(exc).__name__}: {exc}", file=sys.stderr)
            continue
        print(f"{i} {front.n} {front.d} {float(value)!r} {seconds:.6f}")
    return 1 if failed else 0


def cmd_estimate(args) -> int:
    fronts = _load(args)
    config = _mc_config(args)
    failed = 0
    for i, raw in enumerate(fronts):
        try:
            front = _frame_front(raw, args)
            start = time.perf_counter()
            value, samples = mc_estimate(front, config)
            seconds = time.perf_counter() - start
        except Exception as exc:
            failed += 1
            print(f"front {i}: {type(exc).__name__}: {exc}", file=sys.stderr)
            continue
        print(f"{i} {front.n} {front.d} {float(value)!r} {samples} {seconds:.6f}")
    return 1 if failed else 0


def cmd_gen(args) -> int:
    fronts = [gen_front(GenSpec(args.family, args.d, args.n, args.seed + k)) for k in range(args.count)]
    write_fronts(fronts, sys.stdout if args.output == "-" else args.output)
    return 0


def _datasets(args):
    families = args.family or ["spherical"]
    if args.d or args.n:
        if not (args.d and args.n):
            raise ValueError("--d and --n must be given together")
        for family in families:
            for d in args.d:
                for n in args.n:
                    spec = GenSpec(family, d, n, args.seed)
                    yield spec.name, family, (lambda spec=spec: gen_front(spec))
    for path in args.files:
        for i, raw in enumerate(read_fronts(path)):
            yield f"{path}#{i}", "file", (lambda raw=raw: canonicalize(raw, np.zeros(raw.shape[1])))


def cmd_bench(args) -> int:
    opts = AlgoOptions(args.base_threshold, McConfig(args.epsilon, args.delta, args.seed))
    records = bench(list(_datasets(args)), args.algo or ["qhv"], args.reps, opts)
    write_csv(records, args.output)
    failed = sum(1 for r in records if r.error)
    print(f"wrote {len(records)} rows to {args.output} ({failed} failed)")
    return 1 if failed else 0


def cmd_scaling(args) -> int:
    fit = fit_scaling(read_csv(args.csv), args.family, args.d, args.algo)
    print(fit)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "estimate": cmd_estimate,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "scaling": cmd_scaling,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FrontFormatError, InsufficientDataError, ValueError, OSError) as exc:
        print(f"qhv {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
