"""Command-line front end.

Every subcommand writes JSON (or CSV where tabular) to stdout or ``--out``.
Exit status is 0 on success, 1 on domain errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .constructions import generate_net, sample_uniform
from .experiments import estimate_containment, records_to_csv, sweep
from .grid import Params
from .io import dumps, load_pointset, pointset_to_dict
from .netcheck import is_net, star_discrepancy
from .patterns import (
    EnumerationSizeError,
    count_patterns_exact_d2,
    count_patterns_upper,
    enumerate_patterns,
    overlap_census,
    within_enumeration_guard,
)
from .probability import (
    BruteForceSizeError,
    exact_containment_bruteforce,
    na_bounds_p,
    necessary_N,
    necessary_N_closed_form,
    pz_sandwich,
    sufficient_N,
)
from .search import STRATEGIES, find_net_subset

__all__ = ["build_parser", "run", "main"]


def _add_grid(p: argparse.ArgumentParser, *, m: bool = True, d: bool = True) -> None:
    p.add_argument("-b", "--base", dest="b", type=int, required=True)
    if m:
        p.add_argument("-m", type=int, required=True)
    if d:
        p.add_argument("-d", type=int, required=True)


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str] = ("json",)) -> None:
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netsubset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the (0,m,d)-net property of a point set")
    p.add_argument("--input", required=True)
    _add_grid(p, d=False)
    _add_output(p)

    p = sub.add_parser("discrepancy", help="exact star discrepancy of a small point set")
    p.add_argument("--input", required=True)
    _add_output(p)

    p = sub.add_parser("construct", help="generate a (0,m,d)-net in a prime base")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("sample", help="seeded uniform points")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("patterns", help="count, enumerate or census admissible patterns")
    p.add_argument("action", choices=("count", "enumerate", "census"))
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("bounds", help="containment probability bounds")
    _add_grid(p)
    p.add_argument("-N", type=int, required=True)
    _add_output(p)

    p = sub.add_parser("thresholds", help="sufficient and necessary sample counts")
    _add_grid(p)
    p.add_argument("--eps", type=float, default=0.1)
    _add_output(p)

    p = sub.add_parser("find", help="search a point set for a net subset")
    p.add_argument("--input", required=True)
    _add_grid(p, d=False)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    _add_output(p)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the containment probability")
    _add_grid(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--threads", type=int, default=1)
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("sweep", help="Monte Carlo estimates over a list of sample counts")
    _add_grid(p)
    p.add_argument("-N", type=int, nargs="*", required=True, help="strictly increasing sample counts")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--threads", type=int, default=1)
    _add_output(p, ("csv", "json"))
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _execute(args: argparse.Namespace) -> str:
    cmd = args.command
    if cmd == "verify":
        points = load_pointset(args.input)
        return dumps(is_net(points, Params(args.b, args.m, points.d)).to_dict())
    if cmd == "discrepancy":
        points = load_pointset(args.input)
        return dumps({"n": len(points), "d": points.d, "star_discrepancy": star_discrepancy(points)})
    if cmd == "construct":
        return dumps(pointset_to_dict(generate_net(args.b, args.m, args.d), args.b, args.m))
    if cmd == "sample":
        return dumps(pointset_to_dict(sample_uniform(args.d, args.seed, args.N)))
    if cmd == "patterns":
        params = Params(args.b, args.m, args.d)
        if args.action == "enumerate":
            return dumps([p.to_dict() for p in enumerate_patterns(params)])
        if args.action == "census":
            return dumps(overlap_census(enumerate_patterns(params)).to_dict())
        out: dict = {"b": args.b, "m": args.m, "d": args.d,
                     "upper_bound": {"log10": count_patterns_upper(params) / 2.302585092994046}}
        if args.d == 2:
            out["exact_d2"] = count_patterns_exact_d2(args.b, args.m).to_dict()
        if within_enumeration_guard(params):
            out["enumerated"] = len(enumerate_patterns(params))
        return dumps(out)
    if cmd == "bounds":
        params = Params(args.b, args.m, args.d, args.N)
        report = pz_sandwich(params).to_dict()
        lo, hi = na_bounds_p(params)
        report["p_target_bounds"] = {"lower": lo, "upper": hi}
        try:
            report["exact"] = exact_containment_bruteforce(params)
        except (BruteForceSizeError, EnumerationSizeError):
            report["exact"] = None
        return dumps(report)
    if cmd == "thresholds":
        return dumps({
            "b": args.b, "m": args.m, "d": args.d, "eps": args.eps,
            "eps_zero": args.eps == 0,
            "sufficient_N": sufficient_N(args.b, args.d, args.m, args.eps),
            "necessary_N": necessary_N(args.b, args.d, args.m),
            "necessary_N_closed_form": necessary_N_closed_form(args.b, args.d, args.m),
        })
    if cmd == "find":
        points = load_pointset(args.input)
        return dumps(find_net_subset(points, Params(args.b, args.m, points.d), args.strategy).to_dict())
    if cmd == "simulate":
        rec = estimate_containment(Params(args.b, args.m, args.d, args.N), args.trials, args.seed,
                                   strategy=args.strategy, workers=args.threads)
        return records_to_csv([rec]) if args.format == "csv" else dumps(rec.to_dict())
    if cmd == "sweep":
        res = sweep(Params(args.b, args.m, args.d), args.N, args.trials, args.seed,
                    eps=args.eps, strategy=args.strategy, workers=args.threads)
        return res.to_csv() if args.format == "csv" else dumps(res.to_dict())
    raise AssertionError(cmd)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _execute(args)
    except (ValueError, ArithmeticError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"netsubset {args.command}: error: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
