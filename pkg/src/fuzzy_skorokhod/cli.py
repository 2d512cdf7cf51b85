"""Command-line front end.

Exit status: 0 on success, 1 when a counterexample check fails, 2 on bad
flags or unreadable / invalid input. Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .bruteforce import d0_bruteforce
from .core import as_rational
from .counterexample import build_instance, verify_claim1, verify_claim2, verify_remark9
from .dynamics import union_extension, zadeh_extend
from .metrics import d0_lower_bound_certificate, hausdorff, level_metric_dinf, skorokhod_d0

CSV_HEADER = ["depth", "d0_dp", "oracle_lower", "oracle_upper", "runtime_ms"]


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _depth_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        d = int(text)
        return range(d, d + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B or an integer, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzy-skorokhod",
        description="Exact Hausdorff, level-wise and Skorokhod distances between step fuzzy sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two fuzzy sets or interval unions")
    p.add_argument("--metric", choices=["hausdorff", "dinf", "d0"], default="d0")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument(
        "--epsilon", type=_rational_arg, default=None,
        help="level for the d0 lower-bound certificate (default: the d0 value)",
    )
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)

    p = sub.add_parser("extend", help="apply Zadeh's extension of one or more PL maps")
    p.add_argument("--map", dest="maps", action="append", type=Path, required=True,
                   help="PL map file; repeat for the union extension")
    p.add_argument("-o", "--output", type=Path, default=None)
    p.add_argument("fuzzy_set", type=Path)

    p = sub.add_parser("counterexample", help="reproduce the non-contraction counterexample")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1, 2))
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out-dir", type=Path, default=Path("."),
                   help="where u.json and v.json are written")

    p = sub.add_parser("convergence", help="CSV of d0 and oracle brackets across depths")
    p.add_argument("--depths", type=_depth_range, default=range(2, 7), help="range A..B")
    p.add_argument("--resolution", type=_rational_arg, default=None,
                   help="oracle resolution (default 2^-(N+3) per depth)")
    p.add_argument("--no-timing", action="store_true",
                   help="write runtime_ms as 0 for byte-reproducible output")
    return parser


def _read_fuzzy(path: Path):
    return io.fuzzy_set_from_json(io.read_json(path))


def cmd_dist(args, out) -> int:
    if args.metric == "hausdorff":
        A = io.union_from_json(io.read_json(args.first))
        B = io.union_from_json(io.read_json(args.second))
        result = {"metric": "hausdorff", "value": hausdorff(A, B)}
    else:
        u, v = _read_fuzzy(args.first), _read_fuzzy(args.second)
        if args.metric == "dinf":
            result = {"metric": "dinf", "value": level_metric_dinf(u, v)}
        else:
            report = skorokhod_d0(u, v)
            eps = args.epsilon if args.epsilon is not None else report.value
            cert = d0_lower_bound_certificate(u, v, eps) if eps > 0 else None
            data = io.report_to_json(report)
            data["certificate"] = None if cert is None else io.certificate_to_json(cert)
            result = {"metric": "d0", "value": report.value, "report": data}

    value = result["value"]
    if args.format == "json":
        payload = {"metric": result["metric"], "value": io.fmt(value), "decimal": io.decimal(value)}
        if "report" in result:
            payload.update({k: w for k, w in result["report"].items() if k != "value"})
        out.write(io.dumps(payload))
    else:
        out.write(f"{value}\n")
        out.write(f"decimal: {io.decimal(value)}\n")
        rep = result.get("report")
        if rep is not None:
            out.write(f"bracket: [{rep['lower']}, {rep['upper']}]\n")
            knots = " ".join(f"({x}, {y})" for x, y in rep["witness"]["knots"])
            out.write(f"witness: {knots}\n")
            cert = rep["certificate"]
            if cert is None:
                out.write("certificate: none\n")
            else:
                out.write(
                    f"certificate: probe {cert['probe_level']} epsilon {cert['epsilon']} "
                    f"bound {cert['bound']}\n"
                )
    return 0


def cmd_extend(args, out) -> int:
    maps = [io.plmap_from_json(io.read_json(p)) for p in args.maps]
    u = _read_fuzzy(args.fuzzy_set)
    image = zadeh_extend(maps[0], u) if len(maps) == 1 else union_extension(maps, u)
    text = io.dumps(io.fuzzy_set_to_json(image))
    if args.output is None:
        out.write(text)
    else:
        args.output.write_text(text)
    return 0


def cmd_counterexample(args, out) -> int:
    if args.depth < 2:
        raise UsageError(f"--depth must be at least 2, got {args.depth}")
    if not Fraction(1, 2) <= args.lam < 1:
        raise UsageError(f"--lambda must lie in [1/2, 1), got {args.lam}")
    inst = build_instance(args.depth)
    reports = [verify_claim1(inst), verify_claim2(inst, args.lam), verify_remark9(inst)]
    args.out_dir.mkdir(parents=True, exist_ok=True)
    io.write_json(args.out_dir / "u.json", io.fuzzy_set_to_json(inst.u))
    io.write_json(args.out_dir / "v.json", io.fuzzy_set_to_json(inst.v))
    if args.format == "json":
        out.write(io.dumps([io.verification_to_json(r) for r in reports]))
    else:
        for r in reports:
            out.write(r.line() + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_convergence(args, out) -> int:
    depths = args.depths
    if len(depths) == 0 or depths.start < 2:
        raise UsageError("--depths must be a non-empty range of depths >= 2")
    if args.resolution is not None and args.resolution <= 0:
        raise UsageError("--resolution must be positive")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for depth in depths:
        start = time.perf_counter()
        inst = build_instance(depth)
        h = args.resolution if args.resolution is not None else Fraction(1, 2 ** (depth + 3))
        dp = skorokhod_d0(inst.u, inst.v)
        oracle = d0_bruteforce(inst.u, inst.v, h)
        ms = 0 if args.no_timing else round((time.perf_counter() - start) * 1000)
        writer.writerow(
            [depth, io.decimal(dp.value), io.decimal(oracle.lower), io.decimal(oracle.upper), ms]
        )
    return 0


COMMANDS = {
    "dist": cmd_dist,
    "extend": cmd_extend,
    "counterexample": cmd_counterexample,
    "convergence": cmd_convergence,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
