"""Command-line front end.

Thin dispatch over the core package: parse files and flags, call the
report builders, emit deterministic JSON/CSV to stdout or --output.

Exit codes: 0 success (n/a audits included), 1 usage or parse error,
2 audit failure or runtime error, 3 feasibility refusal.
"""

from __future__ import annotations

import argparse
import sys

from .audits import RATIO_ONLY, FULL_CHAIN
from .errors import DomainError, FeasibilityError, ParseError, WorkbenchError
from .geometry import cartesian_square, load_pointset
from .limits import DEFAULT_MAX_BITMAP_BITS, DEFAULT_MAX_PAIRS, Limits
from .numset import load_numset, parse_scalar
from .reports import (
    STAT_FLAGS,
    VERIFY_STATEMENTS,
    build_richline,
    build_search_report,
    build_stats,
    records_to_ndjson,
    run_verify,
    to_csv,
    to_json,
)
from .search import (
    FAMILY_KINDS,
    MAX_RHO,
    MIN_DISTANCES,
    FamilySpec,
    SearchConfig,
    anneal,
    generate_family,
    scan,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_INFEASIBLE = 3

_POINT_STATEMENTS = ("solymosi", "ungar")


class UsageError(WorkbenchError):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def _add_global_flags(p, top: bool) -> None:
    # On subparsers the defaults are suppressed so a value given before
    # the verb is not clobbered.
    kw = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("json", "csv"),
                   **({"default": "json"} if top else kw))
    p.add_argument("--output", help="write to file instead of stdout",
                   **({"default": None} if top else kw))
    p.add_argument("--max-pairs", type=int,
                   **({"default": DEFAULT_MAX_PAIRS} if top else kw))
    p.add_argument("--max-bitmap-bits", type=int,
                   **({"default": DEFAULT_MAX_BITMAP_BITS} if top else kw))


def _build_parser() -> _Parser:
    parser = _Parser(prog="fewdist", description=__doc__)
    _add_global_flags(parser, top=True)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p_stats = sub.add_parser("stats", help="exact cardinalities of derived sets")
    _add_global_flags(p_stats, top=False)
    p_stats.add_argument("input")
    for flag in STAT_FLAGS:
        p_stats.add_argument(f"--{flag}", action="store_true")

    p_verify = sub.add_parser("verify", help="audit one statement on an instance")
    _add_global_flags(p_verify, top=False)
    p_verify.add_argument("statement", choices=VERIFY_STATEMENTS)
    p_verify.add_argument("--input", help="set file (point file for solymosi/ungar)")
    p_verify.add_argument(
        "--product",
        action="store_true",
        help="interpret --input as A and use the point set A x A",
    )
    p_verify.add_argument("--family", help="inline family kind instead of --input")
    _add_family_flags(p_verify)
    p_verify.add_argument("--size", type=int, help="family size")
    p_verify.add_argument("--m", type=int, default=1)
    p_verify.add_argument("--n", type=int, default=1)
    p_verify.add_argument("--depth", choices=(RATIO_ONLY, FULL_CHAIN), default=RATIO_ONLY)
    p_verify.add_argument("--slopes", help="comma-separated origin slopes (solymosi)")
    p_verify.add_argument("--per-line", type=int, help="minimum points per line (solymosi)")
    p_verify.add_argument("--exhaustive-small", action="store_true")

    p_rich = sub.add_parser("richline", help="maximizing difference with witnesses")
    _add_global_flags(p_rich, top=False)
    p_rich.add_argument("input")

    p_scan = sub.add_parser("scan", help="family scan of ratio reports")
    _add_global_flags(p_scan, top=False)
    p_scan.add_argument("--family", required=True, help="comma-separated family kinds")
    p_scan.add_argument("--sizes", required=True, help="comma-separated sizes")
    _add_family_flags(p_scan)

    p_search = sub.add_parser("search", help="annealing search for extremal sets")
    _add_global_flags(p_search, top=False)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--universe", type=int, required=True)
    p_search.add_argument(
        "--objective", choices=(MIN_DISTANCES, MAX_RHO), required=True
    )
    p_search.add_argument("--seed", type=int, required=True)
    p_search.add_argument("--iterations", type=int, default=50_000)
    p_search.add_argument("--initial-temperature", type=float, default=2.0)
    p_search.add_argument("--cooling-rate", type=float, default=0.999)
    p_search.add_argument("--restarts", type=int, default=4)
    p_search.add_argument("--trace-every", type=int, default=1_000)
    return parser


def _add_family_flags(p) -> None:
    p.add_argument("--gap", type=int, default=1)
    p.add_argument("--ratio", default="2", help="growth ratio for gp families")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, dest="family_seed")
    p.add_argument("--universe", type=int, default=None, dest="family_universe")


def _family_spec(kind: str, args) -> FamilySpec:
    if kind not in FAMILY_KINDS:
        raise UsageError(f"unknown family kind {kind!r}")
    return FamilySpec(
        kind=kind,
        gap=args.gap,
        ratio=parse_scalar(args.ratio),
        radius=args.radius,
        seed=args.family_seed,
        universe=args.family_universe,
    )


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_object(args, obj: dict) -> None:
    if args.format == "csv":
        _emit(args, to_csv([obj]))
    else:
        _emit(args, to_json(obj) + "\n")


def _emit_records(args, dicts: list[dict]) -> None:
    if args.format == "csv":
        _emit(args, to_csv(dicts))
    else:
        _emit(args, records_to_ndjson(dicts))


def _records_exit(records) -> int:
    bad = any(rec.holds is False or rec.error is not None for rec in records)
    return EXIT_RUNTIME if bad else EXIT_OK


def _run_stats(args, limits: Limits) -> int:
    A = load_numset(args.input)
    which = [flag for flag in STAT_FLAGS if getattr(args, flag)]
    if not which:
        raise UsageError("stats: no statistic requested "
                         "(use --diff/--distances/--ratio/--product/--slopes)")
    _emit_object(args, build_stats(A, which, limits=limits))
    return EXIT_OK


def _run_verify(args, limits: Limits) -> int:
    numset = None
    pointset = None
    needs_points = args.statement in _POINT_STATEMENTS
    if args.statement == "plunnecke" and args.exhaustive_small:
        pass  # instance-free sweep
    elif args.family:
        if args.size is None:
            raise UsageError("verify: --family requires --size")
        A = generate_family(_family_spec(args.family, args), args.size)
        if needs_points:
            pointset = cartesian_square(A, limits=limits)
        else:
            numset = A
    elif args.input:
        if needs_points:
            if args.product:
                pointset = cartesian_square(load_numset(args.input), limits=limits)
            else:
                pointset = load_pointset(args.input)
        else:
            numset = load_numset(args.input)
    else:
        raise UsageError("verify: need --input or --family")
    slopes = None
    if args.slopes is not None:
        slopes = [parse_scalar(part) for part in args.slopes.split(",")]
    records = run_verify(
        args.statement,
        numset=numset,
        pointset=pointset,
        m=args.m,
        n=args.n,
        depth=args.depth,
        slopes=slopes,
        per_line=args.per_line,
        exhaustive_small=args.exhaustive_small,
        limits=limits,
    )
    _emit_records(args, [rec.to_dict() for rec in records])
    return _records_exit(records)


def _run_richline(args, limits: Limits) -> int:
    _emit_object(args, build_richline(load_numset(args.input), limits=limits))
    return EXIT_OK


def _run_scan(args, limits: Limits) -> int:
    kinds = [k.strip() for k in args.family.split(",") if k.strip()]
    specs = [_family_spec(kind, args) for kind in kinds]
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    records = scan(specs, sizes, limits=limits)
    _emit_records(args, [rec.to_dict() for rec in records])
    return _records_exit(records)


def _run_search(args, limits: Limits) -> int:
    config = SearchConfig(
        n=args.n,
        universe=args.universe,
        objective=args.objective,
        seed=args.seed,
        iterations=args.iterations,
        initial_temperature=args.initial_temperature,
        cooling_rate=args.cooling_rate,
        restarts=args.restarts,
        trace_every=args.trace_every,
    )
    state = anneal(config, limits=limits)
    _emit_object(args, build_search_report(config, state))
    return EXIT_RUNTIME if state.aborted else EXIT_OK


_VERBS = {
    "stats": _run_stats,
    "verify": _run_verify,
    "richline": _run_richline,
    "scan": _run_scan,
    "search": _run_search,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        limits = Limits(max_pairs=args.max_pairs, max_bitmap_bits=args.max_bitmap_bits)
        return _VERBS[args.verb](args, limits)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, WorkbenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
