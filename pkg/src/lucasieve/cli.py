"""Command-line entry point.

Reports go to stdout as JSON (or to --out); a one-line summary goes to stderr.
Exit status is 0 for any verdict and nonzero only for usage or runtime errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .congruences import admissible_pairs, filter_divisor
from .curves import CurveSpec, series_scan, torsion_probe, ingest_coefficients
from .arith import primes_up_to
from .defects import verify_tables
from .errors import LucasieveError, ScanViolation
from .sieve import (
    CACHE_ENV,
    R3_EXCLUDED,
    R5_EXCLUDED,
    ResultCache,
    SieveTask,
    op_solve,
    reproduce_published_lists,
    sieve_report,
)
from .thue import DEFAULT_A_BOUND, DEFAULT_Y_BOUND


def _odd_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value % 2 == 0:
        raise argparse.ArgumentTypeError(f"target must be odd, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _emit(doc: dict, args, summary: str) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    print(summary, file=sys.stderr)


def _cache(args) -> ResultCache | None:
    if getattr(args, "no_cache", False):
        return None
    return ResultCache(args.cache_dir)  # None falls back to the env var, then ~/.cache


def _add_bounds(p):
    p.add_argument("--y-bound", type=_positive, default=DEFAULT_Y_BOUND,
                   help="search bound for the d = 5 quartic (default %(default)s)")
    p.add_argument("--a-bound", type=_positive, default=DEFAULT_A_BOUND,
                   help="trace bound for per-trace Thue solving (default %(default)s)")


def _add_cache(p):
    p.add_argument("--cache-dir", default=None, help=f"result cache directory (overrides ${CACHE_ENV})")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the result cache")


def cmd_sieve(args) -> int:
    if args.weight == 2 and args.torsion is None:
        args.parser.error("weight 2 needs --torsion 3 or 5")
    try:
        task = SieveTask(args.ell, args.weight, args.torsion, args.y_bound, args.a_bound,
                         include_ell_itself=not args.exclude_ell_itself)
    except ValueError as exc:
        args.parser.error(str(exc))
    doc = sieve_report(task, _cache(args))
    sols = ", ".join(f"p={s['p']} a={s['a_p']} d={s['d']}" for s in doc["solutions"])
    fams = "; ".join(f.get("description") or f.get("equation", "") for f in doc["families"])
    _emit(doc, args, f"ell={args.ell} k={args.weight} r={task.r}: {doc['verdict']}"
          + (f" [{sols}]" if sols else "") + (f" [{fams}]" if fams else ""))
    return 0


def cmd_batch(args) -> int:
    cache_dir = None if args.no_cache else str(_cache(args).directory)
    doc = reproduce_published_lists(args.y_bound, args.a_bound, jobs=args.jobs, cache_dir=cache_dir)
    if not args.full:
        doc.pop("reports")
    _emit(doc, args, f"{len(doc['entries'])} tasks, {len(doc['discrepancies'])} discrepancies, "
          f"{len(doc['tensions'])} expected tensions")
    return 0


def cmd_tables(args) -> int:
    rep = verify_tables()
    doc = {"rows_checked": rep.rows_checked, "passed": len(rep.passed), "ok": rep.ok,
           "catalog_version": rep.catalog_version}
    _emit(doc, args, f"tables {rep.catalog_version}: {len(rep.passed)}/{rep.rows_checked} rows verified")
    return 0


def cmd_thue(args) -> int:
    if args.d < 3 or args.d % 2 == 0:
        args.parser.error("--d must be an odd integer >= 3")
    doc = op_solve(args.ell, args.d, args.weight, args.chi, args.y_bound, args.a_bound)
    _emit(doc, args, f"a(p^{args.d - 1}) = {args.ell}: {doc['kind']}, {len(doc['solutions'])} solution(s)")
    return 0


def cmd_congruence(args) -> int:
    cs = admissible_pairs(args.ell, args.torsion)
    doc = cs.to_dict()
    doc["rendered"] = cs.render()
    if args.d is not None:
        doc["d"] = args.d
        doc["p_residues"] = sorted(filter_divisor(args.ell, args.torsion, args.d))
    _emit(doc, args, f"ell={args.ell} r={args.torsion}: {cs.render()}")
    return 0


def cmd_curve(args) -> int:
    curve = CurveSpec(*args.coefficients, conductor=args.conductor)
    cert = torsion_probe(curve, primes_up_to(args.sample_limit), args.torsion)
    exclusion = R3_EXCLUDED if args.torsion == 3 else R5_EXCLUDED
    try:
        scan = series_scan(curve, args.n_max, exclusion, args.torsion)
    except ScanViolation as exc:
        scan = exc.report
    doc = {"curve": str(curve), "torsion_certificate": cert.to_dict(), "scan": scan.to_dict()}
    if args.coefficients_file:
        series = ingest_coefficients(args.coefficients_file)
        doc["ingested"] = {"entries": len(series.values), "n_max": series.n_max}
    _emit(doc, args, f"{curve}: torsion gcd {cert.order_gcd}, {scan.coefficients_checked} coefficients, "
          f"{'clean' if scan.clean else 'VIOLATIONS'}")
    return 0 if scan.clean else 3


def cmd_cache(args) -> int:
    cache = ResultCache(args.cache_dir)
    if args.action == "list":
        doc = {"directory": str(cache.directory), "entries": [p.name for p in cache.entries()]}
        summary = f"{len(doc['entries'])} cached reports in {cache.directory}"
    else:
        n = cache.clear()
        doc = {"directory": str(cache.directory), "removed": n}
        summary = f"removed {n} cached reports"
    _emit(doc, args, summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lucasieve", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="decide whether a(n) = ell is possible")
    p.add_argument("--ell", type=_odd_int, required=True)
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--torsion", type=int, choices=(3, 5), default=None)
    p.add_argument("--exclude-ell-itself", action="store_true",
                   help="skip the divisor d = |ell| in the class test")
    _add_bounds(p)
    _add_cache(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sieve, parser=p)

    p = sub.add_parser("batch", help="run every |ell| < 100 (and -691) for r = 3, 5 and diff with the published lists")
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    p.add_argument("--full", action="store_true", help="include every per-task report")
    _add_bounds(p)
    _add_cache(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_batch, parser=p)

    p = sub.add_parser("tables", help="verify the defective-value tables")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables, parser=p)

    p = sub.add_parser("thue", help="solve a(p^(d-1)) = ell for one d")
    p.add_argument("--ell", type=_odd_int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--chi", type=int, choices=(-1, 0, 1), default=1)
    _add_bounds(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_thue, parser=p)

    p = sub.add_parser("congruence", help="admissible (p, d) residues mod r")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--torsion", type=int, choices=(3, 5), required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_congruence, parser=p)

    p = sub.add_parser("curve", help="torsion probe and coefficient scan of one curve")
    p.add_argument("coefficients", type=int, nargs=5, metavar="a")
    p.add_argument("--torsion", type=int, choices=(3, 5), required=True)
    p.add_argument("--conductor", type=int, default=None)
    p.add_argument("--n-max", type=_positive, default=10_000)
    p.add_argument("--sample-limit", type=_positive, default=200)
    p.add_argument("--coefficients-file", default=None, help="also ingest and validate an 'n a(n)' file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve, parser=p)

    p = sub.add_parser("cache", help="inspect or clear the result cache")
    p.add_argument("action", choices=("list", "clear"))
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cache, parser=p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LucasieveError as exc:
        print(f"lucasieve: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
