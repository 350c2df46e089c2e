"""Command line front end.

Subcommands:
  jones    compute one colored Jones polynomial
  degree   tabulate degrees by one of the four methods
  slope    edgepath report (twists, slope, Euler ratios, admissibility)
  verify   run the identity checks over a parameter grid

Exit codes: 0 clean, 2 when a verify run finds a conjecture-identity
mismatch, 1 on usage or arithmetic errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import degopt, edgepath, pipeline
from .jones import KnotParams, colored_jones, exact_dplus
from .pipeline import DEFAULT_N_MAX, HARD_N_CEILING


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_params(parser):
    parser.add_argument("-r", type=int, required=True, help="first tangle integer, odd, < -1")
    parser.add_argument("-s", type=int, required=True, help="second tangle integer, even, > 1")
    parser.add_argument("-t", type=int, required=True, help="third tangle integer, odd, > 1")
    parser.add_argument("-u", type=int, required=True, help="twist integer, odd, <= -1")


def _params_from(args):
    return KnotParams(args.r, args.s, args.t, args.u)


def build_parser():
    parser = _Parser(prog="knotslope")
    sub = parser.add_subparsers(dest="command", required=True)

    p_jones = sub.add_parser("jones", help="compute one colored Jones polynomial")
    _add_params(p_jones)
    p_jones.add_argument("-N", type=int, required=True, help="color (>= 1)")
    p_jones.add_argument("--format", choices=("text", "json"), default="text")
    p_jones.add_argument("--cache", default=None, help="polynomial cache directory")
    p_jones.add_argument(
        "--n-ceiling", type=int, default=HARD_N_CEILING,
        help="refuse colors above this (state-sum cost grows fast)",
    )

    p_degree = sub.add_parser("degree", help="tabulate degrees for N = 1..n-max")
    _add_params(p_degree)
    p_degree.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p_degree.add_argument(
        "--method", choices=("exact", "brute", "fast", "closed"), default="closed"
    )
    p_degree.add_argument("--format", choices=("text", "json"), default="text")

    p_slope = sub.add_parser("slope", help="edgepath report as JSON")
    _add_params(p_slope)

    p_verify = sub.add_parser("verify", help="verify the identities over a grid")
    p_verify.add_argument("--grid", required=True,
                          help="e.g. 'r=-5..-3;s=2..4;t=3..5;u=-3..-1'")
    p_verify.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p_verify.add_argument("--out", required=True, help="JSON report path")
    p_verify.add_argument("--csv", default=None, help="CSV summary path")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--cache", default=None, help="polynomial cache directory")

    return parser


def _cmd_jones(args):
    if args.N > args.n_ceiling:
        print(
            f"error: N={args.N} above the ceiling {args.n_ceiling}; "
            "raise --n-ceiling to force",
            file=sys.stderr,
        )
        return 1
    params = _params_from(args)
    if args.cache is not None:
        poly = pipeline.jones_cached(params, args.N, args.cache)
    else:
        poly = colored_jones(params, args.N)
    if args.format == "json":
        doc = {
            "params": {"r": params.r, "s": params.s, "t": params.t, "u": params.u},
            "N": args.N,
            "polynomial": poly.to_json(),
            "max_deg": poly.max_deg,
            "leading_coeff": str(poly.leading_coeff),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(poly.to_text())
    return 0


def _cmd_degree(args):
    params = _params_from(args)
    if args.n_max < 1:
        print("error: --n-max must be >= 1", file=sys.stderr)
        return 1
    rows = []
    for N in range(1, args.n_max + 1):
        if args.method == "exact":
            value, _ = exact_dplus(params, N)
        elif args.method == "brute":
            value, _ = degopt.brute_max_objective(params, N - 1)
        elif args.method == "fast":
            value = (
                degopt.brute_max_objective(params, 0)[0]
                if N == 1
                else degopt.fast_max_objective(params, N - 1)
            )
        else:
            value = degopt.closed_form_dplus(params, N)
        rows.append((N, value))
    if args.format == "json":
        print(json.dumps({"method": args.method,
                          "degrees": [{"N": N, "dplus": v} for N, v in rows]},
                         sort_keys=True))
    else:
        for N, v in rows:
            print(f"N={N}\t{v}")
    return 0


def _cmd_slope(args):
    params = _params_from(args)
    print(json.dumps(edgepath.slope_report(params), sort_keys=True, indent=2))
    return 0


def _cmd_verify(args):
    if args.n_max > HARD_N_CEILING:
        print(f"error: --n-max above the ceiling {HARD_N_CEILING}", file=sys.stderr)
        return 1
    summary = pipeline.grid_run(
        args.grid, args.n_max, out_json=args.out, out_csv=args.csv,
        jobs=args.jobs, cache_dir=args.cache,
    )
    print(
        f"verified {summary['verified']}/{summary['tuples']} tuples, "
        f"{summary['mismatched']} mismatched, {summary['skipped']} skipped "
        f"({summary['elapsed']:.1f}s)"
    )
    return 2 if summary["mismatched"] else 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "jones": _cmd_jones,
        "degree": _cmd_degree,
        "slope": _cmd_slope,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
