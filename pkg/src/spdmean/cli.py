"""Command-line interface: ``spdmean {mean,cond,bench,trace}``."""

import argparse
import sys

from . import bench
from .exceptions import SpdMeanError, UnknownAlgorithm
from .io import format_matrix, read_matrix, write_matrix, write_trace
from .iterative import SCALINGS
from .problems import ProblemCase, parse_case


def _add_run_options(p):
    p.add_argument("--alg", default="chol-schur", help="algorithm id (default: chol-schur)")
    p.add_argument("--t", type=float, default=0.5, help="geodesic parameter (chol-schur only)")
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--maxit", type=int, default=100)
    p.add_argument("--nodes", type=int, help="node count for gc and minimax")
    p.add_argument("--scaling", choices=SCALINGS, default="none", help="three-terms scaling")


def _options(args):
    return bench.RunOptions(t=args.t, tol=args.tol, maxit=args.maxit, scaling=args.scaling,
                            nodes=args.nodes)


def build_parser():
    parser = argparse.ArgumentParser(prog="spdmean", description="Geometric means of SPD matrices.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("mean", help="compute A #_t B")
    p.add_argument("a")
    p.add_argument("b")
    _add_run_options(p)
    p.add_argument("-o", "--output", help="write the matrix here instead of standard output")

    p = sub.add_parser("cond", help="condition numbers of the mean")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("bench", help="run a test suite and write CSV traces")
    p.add_argument("--suite", required=True, choices=("test1", "test2", "test3"))
    p.add_argument("--out", help="CSV file (default: standard output)")

    p = sub.add_parser("trace", help="per-step CSV trace of one algorithm on one case")
    p.add_argument("a", nargs="?")
    p.add_argument("b", nargs="?")
    p.add_argument("--case", help="generated case, e.g. test1:x=10 or test3:n=5,t=1.5")
    _add_run_options(p)
    p.add_argument("--out", help="CSV file (default: standard output)")
    return parser


def _emit_csv(rows, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_trace(rows, fh)
    else:
        write_trace(rows, sys.stdout)


def _cmd_mean(args):
    case = ProblemCase("input", read_matrix(args.a), read_matrix(args.b))
    res = bench.run(case, args.alg, _options(args))
    if res.exit_code:
        print(f"error: {res.message}", file=sys.stderr)
        return res.exit_code
    if args.output:
        write_matrix(res.matrix, args.output)
    else:
        sys.stdout.write(format_matrix(res.matrix))
    return 0


def _cmd_cond(args):
    res = bench.run(ProblemCase("input", read_matrix(args.a), read_matrix(args.b)), "cond")
    r = res.report
    for key in ("kappa_abs", "kappa_rel", "lower", "upper", "alpha", "beta"):
        print(f"{key} {getattr(r, key):.16e}")
    return 0


def _cmd_bench(args):
    rows, failures = bench.run_suite(args.suite)
    _emit_csv(rows, args.out)
    for name, alg, msg in failures:
        print(f"note: {name} {alg}: {msg}", file=sys.stderr)
    return 0


def _cmd_trace(args):
    if args.case:
        if args.a or args.b:
            raise UnknownAlgorithm("give either --case or two matrix files, not both")
        case = parse_case(args.case)
    elif args.a and args.b:
        case = ProblemCase("input", read_matrix(args.a), read_matrix(args.b))
    else:
        raise UnknownAlgorithm("trace needs --case or two matrix files")
    res = bench.run(case, args.alg, _options(args))
    _emit_csv(res.rows, args.out)
    if res.exit_code:
        print(f"error: {res.message}", file=sys.stderr)
    return res.exit_code


_COMMANDS = {"mean": _cmd_mean, "cond": _cmd_cond, "bench": _cmd_bench, "trace": _cmd_trace}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except (SpdMeanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
