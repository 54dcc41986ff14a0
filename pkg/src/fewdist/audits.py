"""Exact-arithmetic auditors for the statements the workbench tracks.

Each auditor checks one statement on a concrete instance and returns an
AuditRecord with exact left/right sides. Inequalities that are exact
(counting bounds, containments) are audited pass/fail; asymptotic
statements with unspecified constants are audited as ratio reports with
holds = n/a. Precondition violations raise instead of failing the
audit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .geometry import (
    PointSet,
    cartesian_square,
    format_slope,
    is_collinear,
    pointset_sumset,
    pointset_sumset_size,
    slope_set,
    slope_sort_key,
    solymosi_construct,
)
from .limits import DEFAULT_LIMITS, Limits, guard_pairs
from .numset import NumSet, Scalar, canonical_scalar, format_scalar
from .setops import (
    difference_set,
    iterated_combination,
    product_set,
    ratio_set,
    square_set,
    sumset,
)

DIFFERENCING = "DIFFERENCING"
PLUNNECKE = "PLUNNECKE"
SOLYMOSI = "SOLYMOSI"
PRODUCT_SUMSET = "PRODUCT_SUMSET"
UNGAR = "UNGAR"
MAIN_THEOREM = "MAIN_THEOREM"
RUDIN_EXPONENT = "RUDIN_EXPONENT"

RATIO_ONLY = "ratio-only"
FULL_CHAIN = "full-chain"


def sig6(value: float) -> str:
    """Decimal string with 6 significant digits."""
    return format(value, ".6g")


@dataclass
class AuditRecord:
    """Outcome of one statement check.

    holds is True/False for exact comparisons and None (serialized
    "n/a") for asymptotic statements. ratio * rhs == lhs exactly
    whenever rhs != 0.
    """

    statement_id: str
    sizes: dict
    lhs: Scalar
    rhs: Scalar
    ratio: Scalar | None
    holds: bool | None
    witnesses: dict | None = None
    notes: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict:
        out = {
            "statement_id": self.statement_id,
            "sizes": dict(self.sizes),
            "lhs": format_scalar(self.lhs),
            "rhs": format_scalar(self.rhs),
            "ratio": format_scalar(self.ratio) if self.ratio is not None else "n/a",
            "approx_ratio": (
                sig6(float(self.ratio)) if self.ratio is not None else "n/a"
            ),
            "holds": "n/a" if self.holds is None else ("true" if self.holds else "false"),
        }
        for key, value in self.extras.items():
            out[key] = value
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        out["notes"] = list(self.notes)
        if self.error is not None:
            out["error"] = self.error
        return out


def error_record(statement_id: str, message: str, sizes: dict | None = None) -> AuditRecord:
    """Record for an instance that could not be audited (scan keeps going)."""
    return AuditRecord(
        statement_id=statement_id,
        sizes=sizes or {},
        lhs=0,
        rhs=0,
        ratio=None,
        holds=None,
        error=message,
    )


def _ratio(lhs: Scalar, rhs: Scalar) -> Scalar | None:
    if rhs == 0:
        return None
    return canonical_scalar(Fraction(lhs) / Fraction(rhs))


def differencing_sides(a1, a2, b1, b2) -> tuple[Scalar, Scalar]:
    """Both sides of the four-square identity for d1 = a2-a1, d2 = b1-b2."""
    lhs = (
        (b1 - a1) ** 2 + (b2 - a2) ** 2 - (b1 - a2) ** 2 - (b2 - a1) ** 2
    )
    rhs = 2 * (a2 - a1) * (b1 - b2)
    return lhs, rhs


def check_differencing(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> AuditRecord:
    """Four-square identity on A^4 plus the constructive containment
    2*(D.D) inside 2D^2 - 2D^2, witnessed element by element."""
    if len(A) < 1:
        raise DomainError("empty set")
    guard_pairs(len(A) ** 4, limits, "check_differencing")
    elems = A.elements
    checked = 0
    counterexample = None
    for a1 in elems:
        for a2 in elems:
            for b1 in elems:
                for b2 in elems:
                    lhs_q, rhs_q = differencing_sides(a1, a2, b1, b2)
                    checked += 1
                    if lhs_q != rhs_q:
                        counterexample = {
                            "a1": format_scalar(a1),
                            "a2": format_scalar(a2),
                            "b1": format_scalar(b1),
                            "b2": format_scalar(b2),
                            "lhs": format_scalar(lhs_q),
                            "rhs": format_scalar(rhs_q),
                        }
                        break
                if counterexample:
                    break
            if counterexample:
                break
        if counterexample:
            break

    D = difference_set(A, A, limits=limits)
    guard_pairs(len(D) ** 2, limits, "check_differencing containment")
    # one witness pair (u, v) with v - u = d for every difference d
    pair_for: dict = {}
    for u in elems:
        for v in elems:
            pair_for.setdefault(v - u, (u, v))
    members = set(D.elements)
    containment_failure = None
    sample = []
    for d1 in D.elements:
        a1, a2 = pair_for[d1]
        for d2 in D.elements:
            u2, v2 = pair_for[d2]
            b1, b2 = v2, u2
            x = (b1 - a1, b2 - a2, b1 - a2, b2 - a1)
            value = x[0] ** 2 + x[1] ** 2 - x[2] ** 2 - x[3] ** 2
            ok = value == 2 * d1 * d2 and all(xi in members for xi in x)
            if not ok:
                containment_failure = {
                    "d1": format_scalar(d1),
                    "d2": format_scalar(d2),
                    "squares": [format_scalar(xi) for xi in x],
                }
                break
            if len(sample) < 3:
                sample.append(
                    {
                        "value": format_scalar(2 * d1 * d2),
                        "squares": [format_scalar(xi) for xi in x],
                    }
                )
        if containment_failure:
            break

    holds = counterexample is None and containment_failure is None
    witnesses: dict = {"four_square_sample": sample}
    if counterexample:
        witnesses["identity_counterexample"] = counterexample
    if containment_failure:
        witnesses["containment_counterexample"] = containment_failure
    return AuditRecord(
        statement_id=DIFFERENCING,
        sizes={
            "A": len(A),
            "D": len(D),
            "quadruples": checked,
            "containment_elements": len(D) ** 2,
        },
        lhs=checked,
        rhs=len(A) ** 4,
        ratio=_ratio(checked, len(A) ** 4),
        holds=holds,
        witnesses=witnesses,
    )


def check_plunnecke(
    S: NumSet, m: int, n: int, *, limits: Limits = DEFAULT_LIMITS
) -> AuditRecord:
    """|mS - nS| against (|S+S|/|S|)^(m+n) * |S|, compared exactly."""
    combo = iterated_combination(m, n, S, limits=limits)
    ss = sumset(S, S, limits=limits)
    lhs = len(combo)
    rhs = canonical_scalar(Fraction(len(ss), len(S)) ** (m + n) * len(S))
    return AuditRecord(
        statement_id=PLUNNECKE,
        sizes={
            "S": len(S),
            "S_plus_S": len(ss),
            "mS_minus_nS": lhs,
            "m": m,
            "n": n,
        },
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=lhs <= rhs,
    )


_QUADRANT_NAMES = ("I", "II", "III", "IV")


def _point_quadrant(p) -> int:
    if p.x == 0 or p.y == 0:
        raise DomainError(f"point on axis: {format_scalar(p.x)},{format_scalar(p.y)}")
    if p.x > 0:
        return 0 if p.y > 0 else 3
    return 1 if p.y > 0 else 2


def check_solymosi(
    P: PointSet,
    slopes,
    n: int,
    *,
    limits: Limits = DEFAULT_LIMITS,
) -> AuditRecord:
    """|P + P| >= (L - 1) n^2 for L origin lines each carrying >= n points.

    Preconditions are verified, not trusted: points must sit strictly
    inside one open quadrant, and every listed line must actually carry
    n points of P.
    """
    if len(P) == 0:
        raise DomainError("empty set")
    family = sorted({canonical_scalar(s) for s in slopes})
    if not family:
        raise DomainError("empty line family")
    if n < 0:
        raise DomainError("per-line point count must be nonnegative")
    quadrants = {_point_quadrant(p) for p in P.points}
    if len(quadrants) > 1:
        raise DomainError("points span quadrants")
    per_line = []
    for r in family:
        count = sum(1 for p in P.points if p.y == r * p.x)
        if count < n:
            raise DomainError(
                f"line too poor: slope {format_scalar(r)} carries {count} "
                f"points, need {n}"
            )
        per_line.append(count)
    lhs = len(pointset_sumset(P, P, limits=limits))
    L = len(family)
    rhs = (L - 1) * n * n
    return AuditRecord(
        statement_id=SOLYMOSI,
        sizes={"P": len(P), "P_plus_P": lhs, "L": L, "n": n},
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=lhs >= rhs,
        witnesses={
            "per_line_counts": per_line,
            "quadrant": _QUADRANT_NAMES[quadrants.pop()],
        },
    )


def check_product_sumset(S: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> AuditRecord:
    """|S.S + S.S|^2 against |S/S| |S|^2, with the proof chain replayed.

    The replay builds the origin-line construction, selects the
    majority quadrant class of lines, forms the explicit lower bound
    LB = (L* - 1) n*^2 and verifies LB <= |P+P| <= |S.S+S.S|^2 exactly.
    holds refers to that chain; the asymptotic statement itself is only
    a ratio report.
    """
    if len(S) == 0:
        raise DomainError("empty set")
    if 0 in S:
        raise DomainError("zero divisor element")
    SS = product_set(S, S, limits=limits)
    T = sumset(SS, SS, limits=limits)
    R = ratio_set(S, S, limits=limits)
    lhs = len(T) ** 2
    rhs = len(R) * len(S) ** 2

    P, lines = solymosi_construct(S, limits=limits)
    classes: list[list] = [[], [], [], []]
    for line in lines:
        q1, q2, q3, q4 = line.quadrant_counts
        if line.slope > 0:
            classes[0 if q1 >= q3 else 2].append(line)
        else:
            classes[1 if q2 >= q4 else 3].append(line)
    selected = max(range(4), key=lambda c: (len(classes[c]), -c))
    chosen = classes[selected]
    l_star = len(chosen)
    n_star = min((ln.quadrant_counts[selected] for ln in chosen), default=0)
    lb = max(0, l_star - 1) * n_star * n_star
    pp = pointset_sumset_size(P, P, limits=limits)
    chain_ok = lb <= pp <= lhs

    return AuditRecord(
        statement_id=PRODUCT_SUMSET,
        sizes={
            "S": len(S),
            "S_times_S": len(SS),
            "S_over_S": len(R),
            "SS_plus_SS": len(T),
            "P": len(P),
            "P_plus_P": pp,
            "lines": len(lines),
            "L_star": l_star,
            "n_star": n_star,
            "LB": lb,
        },
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=chain_ok,
        witnesses={"selected_quadrant": _QUADRANT_NAMES[selected]},
        notes=[
            "asymptotic constant unspecified; holds refers to the exact "
            "replay chain LB <= |P+P| <= |S.S+S.S|^2"
        ],
    )


def check_ungar(P: PointSet, *, limits: Limits = DEFAULT_LIMITS) -> AuditRecord:
    """|slope set| >= |P| - 1 for non-collinear P; collinear P is n/a."""
    if len(P) < 2:
        raise DomainError("check_ungar requires at least 2 points")
    guard_pairs(len(P) ** 2, limits, "check_ungar")
    slopes = slope_set(P)
    lhs = len(slopes)
    rhs = len(P) - 1
    witnesses = None
    if lhs <= 32:
        witnesses = {
            "slopes": [format_slope(s) for s in sorted(slopes, key=slope_sort_key)]
        }
    if is_collinear(P):
        return AuditRecord(
            statement_id=UNGAR,
            sizes={"P": len(P), "slopes": lhs},
            lhs=lhs,
            rhs=rhs,
            ratio=_ratio(lhs, rhs),
            holds=None,
            witnesses=witnesses,
            notes=[
                "collinear input: statement requires points not all on a line",
                "slope set includes the vertical direction INFINITY",
            ],
        )
    return AuditRecord(
        statement_id=UNGAR,
        sizes={"P": len(P), "slopes": lhs},
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=lhs >= rhs,
        witnesses=witnesses,
        notes=["slope set includes the vertical direction INFINITY"],
    )


def check_main_theorem(
    A: NumSet, depth: str = RATIO_ONLY, *, limits: Limits = DEFAULT_LIMITS
) -> AuditRecord:
    """Sharpness report for |A-A| against |Delta(AxA)| |A|^(-1/8).

    RATIO_ONLY reports the exact cardinalities and
    rho = |A-A| |A|^(1/8) / |Delta| to 6 significant digits (the only
    approximate number in the workbench; every comparison stays exact).

    FULL_CHAIN additionally verifies, exactly:
      (i)   |D*.D* + D*.D*| <= (|Delta|/|D^2|)^8 |D^2| with the literal
            |D^2| normalization; the |D| identification is also reported,
      (ii)  the product-sumset replay chain applied to S = D*,
      (iii) the slope linkage |D*/D*| + 2 >= |slopes(AxA)| >= |A|^2 - 1,
    where D* = (A-A) minus 0 (ratio sets are undefined at 0).
    """
    if depth not in (RATIO_ONLY, FULL_CHAIN):
        raise DomainError(f"unknown depth {depth!r}")
    if len(A) < 2:
        raise DomainError("check_main_theorem requires at least 2 elements")
    D = difference_set(A, A, limits=limits)
    Dsq = square_set(D)
    delta = sumset(Dsq, Dsq, limits=limits)
    lhs = len(D)
    rhs = len(delta)
    rho = len(D) * (len(A) ** 0.125) / len(delta)
    sizes = {"A": len(A), "D": lhs, "D2": len(Dsq), "delta": rhs}
    extras = {"rho_approx": sig6(rho)}
    notes = ["asymptotic statement: constant unspecified, audited as ratio report"]
    if depth == RATIO_ONLY:
        return AuditRecord(
            statement_id=MAIN_THEOREM,
            sizes=sizes,
            lhs=lhs,
            rhs=rhs,
            ratio=_ratio(lhs, rhs),
            holds=None,
            extras=extras,
            notes=notes,
        )

    d_star = NumSet(d for d in D.elements if d != 0)
    SS = product_set(d_star, d_star, limits=limits)
    T = sumset(SS, SS, limits=limits)
    X = len(T)
    rhs_literal = canonical_scalar(Fraction(len(delta), len(Dsq)) ** 8 * len(Dsq))
    rhs_paper = canonical_scalar(Fraction(len(delta), len(D)) ** 8 * len(D))
    holds_literal = X <= rhs_literal
    holds_paper = X <= rhs_paper

    ps = check_product_sumset(d_star, limits=limits)
    lb = ps.sizes["LB"]
    chain_ii = ps.holds is True and ps.lhs == X * X and X * X >= lb

    guard_pairs(len(A) ** 4, limits, "check_main_theorem slopes")
    slopes = slope_set(cartesian_square(A, limits=limits))
    r_star = ratio_set(d_star, d_star, limits=limits)
    chain_iii = (len(r_star) + 2 >= len(slopes)) and (len(slopes) >= len(A) ** 2 - 1)

    sizes.update(
        {
            "D_star": len(d_star),
            "DD_plus_DD": X,
            "P_plus_P": ps.sizes["P_plus_P"],
            "LB": lb,
            "slopes_AxA": len(slopes),
            "D_star_ratio": len(r_star),
        }
    )
    notes = notes + [
        "substituted D* = (A-A) minus 0 in ratio/product constructions",
        "both normalizations reported: literal |D^2| and the |D| identification",
        "slope sets include the vertical direction INFINITY",
    ]
    return AuditRecord(
        statement_id=MAIN_THEOREM,
        sizes=sizes,
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=holds_literal and chain_ii and chain_iii,
        witnesses={
            "X": X,
            "rhs_literal": format_scalar(rhs_literal),
            "rhs_paper": format_scalar(rhs_paper),
            "plunnecke_literal_holds": holds_literal,
            "plunnecke_paper_holds": holds_paper,
            "product_sumset_chain_holds": chain_ii,
            "slope_linkage_holds": chain_iii,
        },
        extras=extras,
        notes=notes,
    )


def check_rudin_exponent(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> AuditRecord:
    """Empirical exponent log|D^2+D^2| / log|D^2| for integer sets.

    The conjecture cannot be decided, only probed: holds is always n/a.
    """
    if len(A) == 0:
        raise DomainError("empty set")
    if not A.is_integer:
        raise DomainError("non-integer element: Rudin probe needs integers")
    D = difference_set(A, A, limits=limits)
    Dsq = square_set(D)
    delta = sumset(Dsq, Dsq, limits=limits)
    lhs = len(delta)
    rhs = len(Dsq)
    notes = ["conjecture probed, not decided"]
    extras = {}
    if rhs > 1:
        extras["exponent_approx"] = sig6(math.log(lhs) / math.log(rhs))
    else:
        extras["exponent_approx"] = "n/a"
        notes.append("degenerate instance: |D^2| = 1, exponent undefined")
    return AuditRecord(
        statement_id=RUDIN_EXPONENT,
        sizes={"A": len(A), "D": len(D), "D2": rhs, "delta": lhs},
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        holds=None,
        extras=extras,
        notes=notes,
    )
