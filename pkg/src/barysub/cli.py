"""Command-line entry point.

Exit status: 0 success, 1 failed certification, 2 usage error, 3 I/O error.
Every simulation subcommand requires ``--seed``; identical command lines
produce identical output bytes.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from fractions import Fraction

from . import chain, export
from .exact import cert, lipschitz
from .flat import mean_log_growth, preimages
from .triangle import ShapePoint

EXIT_OK, EXIT_CERT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="barysub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("simulate", help="record a planar or flat chain trace")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--steps", type=_nonneg, required=True)
    p.add_argument("--chain", choices=("triangle", "flat"), default="triangle")
    p.add_argument("--start-x", type=float, default=0.3)
    p.add_argument("--start-y", type=float, default=0.4)
    add_output(p)

    p = sub.add_parser("mu", help="histogram of the flat chain's invariant measure")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--steps", type=_positive, default=100000)
    p.add_argument("--bins", type=_positive, default=100)
    add_output(p)

    p = sub.add_parser("lyapunov", help="decay slope of ln(Y_n) along a planar run")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--steps", type=_positive, default=100000)
    p.add_argument("--start-x", type=float, default=0.3)
    p.add_argument("--start-y", type=float, default=0.4)
    add_output(p, "json")

    p = sub.add_parser("rate-l", help="running mean of ln G along a flat run")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--steps", type=_positive, default=100000)
    p.add_argument("--start-x", type=float, default=None, help="default: uniform on [0, 1/2]")
    add_output(p, "json")

    p = sub.add_parser("couple", help="planar and flat chains driven by one die")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--steps", type=_nonneg, default=1000)
    p.add_argument("--start-x", type=float, default=0.3)
    p.add_argument("--start-y", type=float, default=0.4)
    p.add_argument("--start-z", type=float, default=None, help="default: --start-x")
    add_output(p)

    p = sub.add_parser("certify", help="exact and grid certifications (JSON)")
    p.add_argument("--all", action="store_true", help="positivity, monotonicity, grid N=66, M^3 criterion")
    p.add_argument("--positive", action="store_true")
    p.add_argument("--monotone", action="store_true")
    p.add_argument("--grid", type=_positive, metavar="N")
    p.add_argument("--lipschitz", type=int, choices=(1, 2, 3), metavar="ORDER")
    p.add_argument("--grid-n", type=_positive, default=10000)
    p.add_argument("--output", "-o", default="-")

    p = sub.add_parser("preimage", help="count pairs (i, y) with z_i(y) = x")
    p.add_argument("--x", required=True, help="rational like 1/3 or a decimal")
    add_output(p, "json")

    p = sub.add_parser("fvalue", help="mean log growth over all words of a given depth")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--depth", type=_positive, default=2)
    add_output(p, "json")
    return parser


def _shape(x: float, y: float) -> ShapePoint:
    try:
        return ShapePoint(x, y)
    except ValueError as exc:
        raise UsageError(str(exc))


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _record(args, record: dict, prov: dict) -> str:
    return export.record_json(record, prov) if args.format == "json" else export.record_csv(record, prov)


def _certify(args) -> tuple[dict, bool]:
    sections = {}
    if args.all or args.positive:
        sections["positive"] = cert.certify_F_positive().to_json()
    if args.all or args.monotone:
        sections["monotone"] = cert.certify_F_monotone().to_json()
    if args.all or args.grid:
        sections["grid"] = lipschitz.grid_certify_F(args.grid or 66).to_json()
    if args.all or args.lipschitz:
        order = args.lipschitz or 3
        sections["lipschitz"] = lipschitz.lipschitz_criterion(order, args.grid_n).to_json()
    if not sections:
        raise UsageError("certify: choose --all or at least one of --positive/--monotone/--grid/--lipschitz")
    verdict = all(s["verdict"] for s in sections.values())
    return {**sections, "verdict": verdict}, verdict


def dispatch(args, argv: list[str]) -> int:
    cmd = "barysub " + shlex.join(argv)
    seed = getattr(args, "seed", None)
    prov = export.provenance(cmd, seed)

    if args.command == "simulate":
        if args.chain == "flat":
            if not 0.0 <= args.start_x <= 0.5:
                raise UsageError("--start-x must lie in [0, 1/2]")
            trace = chain.run_flat_chain(args.seed, args.start_x, args.steps)
        else:
            trace = chain.run_triangle_chain(args.seed, _shape(args.start_x, args.start_y), args.steps)
        text = export.trace_json(trace, prov) if args.format == "json" else export.trace_csv(trace, prov)
    elif args.command == "mu":
        if args.steps < args.bins:
            raise UsageError("--steps must be >= --bins")
        hist = chain.estimate_invariant_measure(args.seed, args.steps, args.bins)
        text = export.histogram_json(hist, prov) if args.format == "json" else export.histogram_csv(hist, prov)
    elif args.command == "lyapunov":
        if args.steps < 99:
            raise UsageError("--steps must be >= 99")
        trace = chain.run_triangle_chain(args.seed, _shape(args.start_x, args.start_y), args.steps)
        slope = chain.lyapunov_slope_Y(trace)
        text = _record(args, {"seed": args.seed, "steps": args.steps, "start_x": args.start_x,
                              "start_y": args.start_y, "slope": slope}, prov)
    elif args.command == "rate-l":
        if args.start_x is not None and not 0.0 <= args.start_x <= 0.5:
            raise UsageError("--start-x must lie in [0, 1/2]")
        value = chain.estimate_rate_L(args.seed, args.steps, args.start_x)
        text = _record(args, {"seed": args.seed, "steps": args.steps, "L": value}, prov)
    elif args.command == "couple":
        start_z = args.start_x if args.start_z is None else args.start_z
        if not 0.0 <= start_z <= 0.5:
            raise UsageError("--start-z must lie in [0, 1/2]")
        ct = chain.run_coupled_chain(args.seed, _shape(args.start_x, args.start_y), start_z, args.steps)
        text = export.coupled_json(ct, prov) if args.format == "json" else export.coupled_csv(ct, prov)
    elif args.command == "certify":
        body, verdict = _certify(args)
        _write(args.output, export.dumps_json({"provenance": prov, **body}))
        return EXIT_OK if verdict else EXIT_CERT_FAILED
    elif args.command == "preimage":
        try:
            x = Fraction(args.x)
            pre = preimages(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc))
        record = {"x": f"{x.numerator}/{x.denominator}", "count": len(pre)}
        if args.format == "json":
            record["preimages"] = [{"map": i, "y": f"{y.numerator}/{y.denominator}"} for i, y in pre]
        text = _record(args, record, prov)
    elif args.command == "fvalue":
        if not 0.0 <= args.x <= 0.5:
            raise UsageError("--x must lie in [0, 1/2]")
        try:
            value = mean_log_growth(args.x, args.depth)
        except ValueError as exc:
            raise UsageError(str(exc))
        text = _record(args, {"x": args.x, "depth": args.depth, "value": value}, prov)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise UsageError(args.command)
    _write(args.output, text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(args, argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"barysub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"barysub: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
