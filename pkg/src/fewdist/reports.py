"""Report builders and serialization shared by the CLI and the service.

All reports are deterministic: fixed key order, exact rationals as
"p/q" strings, approximate values explicitly suffixed _approx, LF line
endings. Batches are newline-delimited JSON; CSV carries the same
fields with nested values JSON-encoded in their cells.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from itertools import combinations

from .audits import (
    AuditRecord,
    RATIO_ONLY,
    check_differencing,
    check_main_theorem,
    check_plunnecke,
    check_product_sumset,
    check_rudin_exponent,
    check_solymosi,
    check_ungar,
    sig6,
)
from .errors import DomainError, FeasibilityError
from .geometry import (
    PointSet,
    cartesian_square,
    difference_histogram,
    format_point,
    product_distance_set,
    rich_line,
    slope_set,
)
from .limits import DEFAULT_LIMITS, Limits, guard_pairs
from .numset import NumSet, format_scalar
from .search import SearchConfig, SearchState, RNG_ALGORITHM, RNG_LIBRARY
from .setops import difference_set, product_set, ratio_set

STAT_FLAGS = ("diff", "distances", "ratio", "product", "slopes")

VERIFY_STATEMENTS = (
    "differencing",
    "plunnecke",
    "solymosi",
    "product-sumset",
    "ungar",
    "main-theorem",
    "rudin",
)


def build_stats(A: NumSet, which, *, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Exact cardinalities of the requested derived sets of A.

    Point-set statistics (distances, slopes) interpret the input as A
    with point set A x A.
    """
    unknown = [w for w in which if w not in STAT_FLAGS]
    if unknown:
        raise DomainError(f"unknown statistic {unknown[0]!r}")
    if not which:
        raise DomainError("no statistic requested")
    out = {}
    for stat in STAT_FLAGS:
        if stat not in which:
            continue
        try:
            if stat == "diff":
                out["diff_card"] = len(difference_set(A, A, limits=limits))
            elif stat == "distances":
                out["delta_card"] = len(product_distance_set(A, limits=limits))
            elif stat == "ratio":
                out["ratio_card"] = len(ratio_set(A, A, limits=limits))
            elif stat == "product":
                out["product_card"] = len(product_set(A, A, limits=limits))
            elif stat == "slopes":
                guard_pairs(len(A) ** 4, limits, "slope enumeration over A x A")
                out["slope_card"] = len(
                    slope_set(cartesian_square(A, limits=limits))
                )
        except FeasibilityError as exc:
            raise FeasibilityError(f"--{stat}: {exc}") from None
    return out


def build_richline(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Maximizing difference, witnesses, pigeonhole bound, rep histogram."""
    line = rich_line(A, limits=limits)
    hist = difference_histogram(A, limits=limits)
    bound = Fraction(len(A) ** 2 - len(A), len(hist))
    return {
        "d": format_scalar(line.d),
        "count": line.count,
        "bound": format_scalar(bound),
        "bound_approx": sig6(float(bound)),
        "points": [format_point(p) for p in line.points],
        "histogram": [[format_scalar(d), c] for d, c in hist],
    }


def plunnecke_exhaustive_small(*, limits: Limits = DEFAULT_LIMITS) -> list[AuditRecord]:
    """Sweep every S in {0..9} with 2 <= |S| <= 5 and three (m, n) settings."""
    records = []
    for size in range(2, 6):
        for subset in combinations(range(10), size):
            S = NumSet(subset)
            for m, n in ((1, 1), (2, 1), (2, 2)):
                rec = check_plunnecke(S, m, n, limits=limits)
                rec.extras["set"] = ",".join(str(v) for v in subset)
                records.append(rec)
    return records


def run_verify(
    statement: str,
    *,
    numset: NumSet | None = None,
    pointset: PointSet | None = None,
    m: int = 1,
    n: int = 1,
    depth: str = RATIO_ONLY,
    slopes=None,
    per_line: int | None = None,
    exhaustive_small: bool = False,
    limits: Limits = DEFAULT_LIMITS,
) -> list[AuditRecord]:
    """Dispatch one verify statement to its auditor."""
    if statement not in VERIFY_STATEMENTS:
        raise DomainError(f"unknown statement id {statement!r}")
    if statement == "plunnecke":
        if exhaustive_small:
            return plunnecke_exhaustive_small(limits=limits)
        _need_set(statement, numset)
        return [check_plunnecke(numset, m, n, limits=limits)]
    if statement == "differencing":
        _need_set(statement, numset)
        return [check_differencing(numset, limits=limits)]
    if statement == "solymosi":
        if pointset is None:
            raise DomainError("solymosi requires a point set input")
        if slopes is None or per_line is None:
            raise DomainError("solymosi requires --slopes and --per-line")
        return [check_solymosi(pointset, slopes, per_line, limits=limits)]
    if statement == "product-sumset":
        _need_set(statement, numset)
        return [check_product_sumset(numset, limits=limits)]
    if statement == "ungar":
        if pointset is None:
            raise DomainError("ungar requires a point set input")
        return [check_ungar(pointset, limits=limits)]
    if statement == "main-theorem":
        _need_set(statement, numset)
        return [check_main_theorem(numset, depth, limits=limits)]
    _need_set(statement, numset)
    return [check_rudin_exponent(numset, limits=limits)]


def _need_set(statement: str, numset) -> None:
    if numset is None:
        raise DomainError(f"{statement} requires a set input")


def build_search_report(config: SearchConfig, state: SearchState) -> dict:
    return {
        "config": {
            "n": config.n,
            "universe": config.universe,
            "objective": config.objective,
            "seed": config.seed,
            "iterations": config.iterations,
            "initial_temperature": config.initial_temperature,
            "cooling_rate": config.cooling_rate,
            "restarts": config.restarts,
            "trace_every": config.trace_every,
        },
        "best_set": [format_scalar(v) for v in state.best.elements],
        "best_score": (
            format_scalar(state.best_score) if state.best_score is not None else "n/a"
        ),
        "trace": [[it, format_scalar(score)] for it, score in state.trace],
        "rng": {
            "algorithm": RNG_ALGORITHM,
            "library": RNG_LIBRARY,
            "seed": config.seed,
        },
        "aborted": state.aborted,
    }


def to_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def records_to_ndjson(records: list[dict]) -> str:
    return "".join(to_json(rec) + "\n" for rec in records)


def _csv_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return str(value)
    return to_json(value)


def to_csv(rows: list[dict]) -> str:
    """RFC 4180 CSV with the same fields as the JSON form.

    Columns appear in first-seen order across rows; nested values are
    JSON-encoded in their cells.
    """
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row[k]) if k in row else "" for k in fields])
    return buf.getvalue()
