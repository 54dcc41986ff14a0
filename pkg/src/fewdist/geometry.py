"""Planar point sets: distance sets, slopes, rich lines, vector sumsets.

Points carry exact rational coordinates. The squared-distance set of a
Cartesian product A x A can be computed two ways: by definition over
point pairs (distance_set) or through the one-dimensional identity
D^2 + D^2 with D = A - A (product_distance_set). The two routes must
agree exactly and are kept as an oracle pair.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, ParseError
from .limits import DEFAULT_LIMITS, Limits, guard_pairs
from .numset import (
    INT64_SAFE,
    NumSet,
    Scalar,
    canonical_scalar,
    format_scalar,
    parse_scalar,
)
from .setops import (
    DENSE_MIN_PAIRS,
    OUTER_MAX_ENTRIES,
    PY_MAX_PAIRS,
    difference_set,
    square_set,
    sumset,
)


class Point(NamedTuple):
    x: Scalar
    y: Scalar


class _SlopeInfinity:
    """Distinguished slope of vertical point pairs."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _SlopeInfinity()


def slope_sort_key(s):
    """Total order on slopes: finite values ascending, INFINITY last."""
    return (1, 0) if s is INFINITY else (0, s)


def format_slope(s) -> str:
    return "inf" if s is INFINITY else format_scalar(s)


class PointSet:
    """Deduplicated planar points in lexicographic order; immutable."""

    __slots__ = ("_pts", "_xy")

    def __init__(self, points: Iterable = ()):
        pts = {Point(canonical_scalar(x), canonical_scalar(y)) for (x, y) in points}
        self._pts = tuple(sorted(pts))
        self._xy = None

    @property
    def points(self) -> tuple[Point, ...]:
        return self._pts

    def int64_coords(self) -> tuple[np.ndarray, np.ndarray] | None:
        """(xs, ys) int64 arrays when all coordinates are bounded ints."""
        if self._xy is False:
            return None
        if self._xy is None:
            ok = all(
                isinstance(p.x, int)
                and isinstance(p.y, int)
                and abs(p.x) <= INT64_SAFE
                and abs(p.y) <= INT64_SAFE
                for p in self._pts
            )
            if ok and self._pts:
                self._xy = (
                    np.array([p.x for p in self._pts], dtype=np.int64),
                    np.array([p.y for p in self._pts], dtype=np.int64),
                )
            else:
                self._xy = False
                return None
        return self._xy

    def __len__(self):
        return len(self._pts)

    def __iter__(self):
        return iter(self._pts)

    def __contains__(self, point):
        try:
            p = Point(canonical_scalar(point[0]), canonical_scalar(point[1]))
        except (TypeError, IndexError):
            return False
        i = bisect.bisect_left(self._pts, p)
        return i < len(self._pts) and self._pts[i] == p

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._pts == other._pts

    def __hash__(self):
        return hash(self._pts)

    def __repr__(self):
        return f"PointSet(size={len(self._pts)})"


def parse_pointset(text: str, source: str = "<string>") -> PointSet:
    """Point file format: one "x,y" per line, '#' comments, dedup on load."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        x_text, sep, y_text = line.partition(",")
        if not sep:
            raise ParseError(f"{source}:{lineno}: expected 'x,y', got {line!r}")
        try:
            points.append((parse_scalar(x_text), parse_scalar(y_text)))
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
    return PointSet(points)


def load_pointset(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pointset(fh.read(), source=str(path))


def format_point(p: Point) -> str:
    return f"{format_scalar(p.x)},{format_scalar(p.y)}"


def cartesian_square(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> PointSet:
    """A x A as a point set."""
    guard_pairs(len(A) ** 2, limits, "cartesian_square")
    elems = A.elements
    return PointSet((a, b) for a in elems for b in elems)


def distance_set(P: PointSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """Squared distances (p1-q1)^2 + (p2-q2)^2 over all point pairs.

    Contains 0 (p = q). This is the by-definition route of the oracle
    pair; product_distance_set is the algebraic route.
    """
    if len(P) == 0:
        raise DomainError("empty set")
    pairs = guard_pairs(len(P) ** 2, limits, "distance_set")
    coords = P.int64_coords()
    if coords is not None and pairs > PY_MAX_PAIRS:
        xs, ys = coords
        spread = max(
            int(xs[-1]) - int(xs[0]),
            int(ys.max()) - int(ys.min()),
        )
        if 2 * spread * spread < 2**63:
            rows = max(1, OUTER_MAX_ENTRIES // max(1, int(xs.size)))
            parts = []
            for i in range(0, int(xs.size), rows):
                dx = xs[i : i + rows, None] - xs[None, :]
                dy = ys[i : i + rows, None] - ys[None, :]
                parts.append(np.unique(dx * dx + dy * dy))
            return NumSet._from_int64(np.unique(np.concatenate(parts)))
    pts = P.points
    out = set()
    for i, p in enumerate(pts):
        for q in pts[i:]:
            dx = p.x - q.x
            dy = p.y - q.y
            out.add(dx * dx + dy * dy)
    return NumSet(out)


def product_distance_set(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """Delta(A x A) through the identity D^2 + D^2 with D = A - A."""
    if len(A) == 0:
        raise DomainError("empty set")
    sq = square_set(difference_set(A, A, limits=limits))
    return sumset(sq, sq, limits=limits)


def slope_set(P: PointSet) -> frozenset:
    """Slopes of all distinct point pairs; vertical pairs give INFINITY."""
    if len(P) < 2:
        raise DomainError("slope_set requires at least 2 points")
    pts = P.points
    slopes = set()
    for i, p in enumerate(pts):
        for q in pts[i + 1 :]:
            dx = p.x - q.x
            if dx == 0:
                slopes.add(INFINITY)
                continue
            dy = p.y - q.y
            if isinstance(dy, int) and isinstance(dx, int):
                slopes.add(canonical_scalar(Fraction(dy, dx)))
            else:
                slopes.add(canonical_scalar(Fraction(dy) / Fraction(dx)))
    return frozenset(slopes)


def is_collinear(P: PointSet) -> bool:
    """True iff all points lie on one line; decided by exact cross products."""
    pts = P.points
    if len(pts) <= 2:
        return True
    p0 = pts[0]
    p1 = pts[1]
    ux, uy = p1.x - p0.x, p1.y - p0.y
    for q in pts[2:]:
        vx, vy = q.x - p0.x, q.y - p0.y
        if ux * vy - uy * vx != 0:
            return False
    return True


@dataclass(frozen=True)
class RichLine:
    """The line a - b = d together with its witnesses in A x A."""

    d: Scalar
    points: PointSet

    @property
    def count(self) -> int:
        return len(self.points)


def difference_histogram(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> tuple:
    """((d, rep_count(A, d)) for every nonzero d in A - A), d ascending."""
    if len(A) < 2:
        raise DomainError("histogram requires at least 2 elements")
    pairs = guard_pairs(len(A) ** 2, limits, "difference_histogram")
    arr = A.int64_array()
    if arr is not None and pairs > PY_MAX_PAIRS:
        counts: dict[int, int] = {}
        rows = max(1, OUTER_MAX_ENTRIES // max(1, int(arr.size)))
        for i in range(0, int(arr.size), rows):
            vals, cnts = np.unique(
                np.subtract.outer(arr[i : i + rows], arr), return_counts=True
            )
            for v, c in zip(vals.tolist(), cnts.tolist()):
                counts[v] = counts.get(v, 0) + c
    else:
        counts = {}
        for a in A.elements:
            for b in A.elements:
                d = a - b
                counts[d] = counts.get(d, 0) + 1
    counts.pop(0, None)
    return tuple(sorted(counts.items()))


def _tiebreak_key(d: Scalar):
    # smallest canonical encoding wins; positive before negative at
    # equal magnitude
    if isinstance(d, int):
        num, den = d, 1
    else:
        num, den = d.numerator, d.denominator
    return (abs(num), den, 0 if num > 0 else 1)


def rich_line(A: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> RichLine:
    """The nonzero difference d maximizing rep_count(A, d), with witnesses.

    Pigeonhole guarantees the witness count is at least
    (|A|^2 - |A|) / (|A - A| - 1).
    """
    if len(A) < 2:
        raise DomainError("rich_line requires at least 2 elements")
    hist = difference_histogram(A, limits=limits)
    best_count = max(c for _, c in hist)
    d = min((dv for dv, c in hist if c == best_count), key=_tiebreak_key)
    members = set(A.elements)
    witnesses = PointSet((a, a - d) for a in A.elements if a - d in members)
    return RichLine(d=d, points=witnesses)


def pigeonhole_bound(A: NumSet, D: NumSet) -> Fraction:
    """(|A|^2 - |A|) / (|A - A| - 1), the rich-line witness guarantee."""
    return Fraction(len(A) ** 2 - len(A), len(D) - 1)


def _encoded_sum_keys(P: PointSet, Q: PointSet, limits: Limits, pairs: int):
    """Sorted unique encodings of P + Q, or None when ints do not apply.

    Points are packed as (x - xlo)*W + (y - ylo) with per-operand
    offsets, which makes the packing additive: key(p) + key(q) encodes
    p + q injectively. Returns (keys, W, xlo_sum, ylo_sum).
    """
    cp, cq = P.int64_coords(), Q.int64_coords()
    if cp is None or cq is None:
        return None
    xp, yp = cp
    xq, yq = cq
    xlo_p, xhi_p = int(xp[0]), int(xp[-1])
    ylo_p, yhi_p = int(yp.min()), int(yp.max())
    xlo_q, xhi_q = int(xq[0]), int(xq[-1])
    ylo_q, yhi_q = int(yq.min()), int(yq.max())
    W = (yhi_p - ylo_p) + (yhi_q - ylo_q) + 1
    x_span = (xhi_p - xlo_p) + (xhi_q - xlo_q) + 1
    slots = x_span * W
    if slots >= 2**63:
        return None
    kp = (xp - xlo_p) * W + (yp - ylo_p)
    kq = (xq - xlo_q) * W + (yq - ylo_q)
    if slots <= limits.max_bitmap_bits and (
        (pairs >= DENSE_MIN_PAIRS and slots <= pairs * 64) or pairs > OUTER_MAX_ENTRIES
    ):
        table = np.zeros(slots, dtype=bool)
        small, big = (kp, kq) if kp.size <= kq.size else (kq, kp)
        for v in small.tolist():
            table[big + v] = True
        keys = np.flatnonzero(table)
    elif pairs <= OUTER_MAX_ENTRIES:
        keys = np.unique(np.add.outer(kp, kq))
    else:
        rows = max(1, OUTER_MAX_ENTRIES // max(1, int(kq.size)))
        parts = [
            np.unique(np.add.outer(kp[i : i + rows], kq))
            for i in range(0, int(kp.size), rows)
        ]
        keys = np.unique(np.concatenate(parts))
    return keys, W, xlo_p + xlo_q, ylo_p + ylo_q


def pointset_sumset(P: PointSet, Q: PointSet, *, limits: Limits = DEFAULT_LIMITS) -> PointSet:
    """{p + q : p in P, q in Q} with coordinatewise vector sums."""
    if len(P) == 0 or len(Q) == 0:
        raise DomainError("empty set")
    pairs = guard_pairs(len(P) * len(Q), limits, "pointset_sumset")
    if pairs > PY_MAX_PAIRS:
        enc = _encoded_sum_keys(P, Q, limits, pairs)
        if enc is not None:
            keys, W, xlo, ylo = enc
            xs, ys = np.divmod(keys, W)
            out = PointSet.__new__(PointSet)
            out._pts = tuple(
                Point(x, y)
                for x, y in zip((xs + xlo).tolist(), (ys + ylo).tolist())
            )
            out._xy = None
            return out
    return PointSet(
        (p.x + q.x, p.y + q.y) for p in P.points for q in Q.points
    )


def pointset_sumset_size(P: PointSet, Q: PointSet, *, limits: Limits = DEFAULT_LIMITS) -> int:
    """|P + Q| without materializing the points (same enumeration paths)."""
    if len(P) == 0 or len(Q) == 0:
        raise DomainError("empty set")
    pairs = guard_pairs(len(P) * len(Q), limits, "pointset_sumset")
    if pairs > PY_MAX_PAIRS:
        enc = _encoded_sum_keys(P, Q, limits, pairs)
        if enc is not None:
            return int(enc[0].size)
    return len({(p.x + q.x, p.y + q.y) for p in P.points for q in Q.points})


@dataclass(frozen=True)
class OriginLine:
    """A line through the origin with its point statistics.

    quadrant_counts is (QI, QII, QIII, QIV) by coordinate signs; points
    on the axes cannot occur because the construction excludes 0.
    """

    slope: Scalar
    count: int
    quadrant_counts: tuple[int, int, int, int]


def _quadrant(x: Scalar, y: Scalar) -> int:
    if x > 0:
        return 0 if y > 0 else 3
    return 1 if y > 0 else 2


def solymosi_construct(
    S: NumSet, *, limits: Limits = DEFAULT_LIMITS
) -> tuple[PointSet, tuple[OriginLine, ...]]:
    """The point family {(s1*s, s2*s)} with its origin-line summary.

    Every ratio r in S/S labels one line through the origin carrying at
    least |S| points of the family. Requires 0 not in S.
    """
    if len(S) == 0:
        raise DomainError("empty set")
    if 0 in S:
        raise DomainError("zero divisor element")
    triples = len(S) ** 3
    if triples > limits.max_pairs:
        from .errors import FeasibilityError

        raise FeasibilityError(
            f"solymosi_construct: estimated triple count {triples} exceeds "
            f"max-pairs {limits.max_pairs}"
        )
    elems = S.elements
    pts = set()
    for s in elems:
        row = [s1 * s for s1 in elems]
        pts.update((a, b) for a in row for b in row)
    P = PointSet(pts)

    by_slope: dict[Scalar, list[int]] = {}
    for (x, y) in P.points:
        if isinstance(y, int) and isinstance(x, int):
            r = canonical_scalar(Fraction(y, x))
        else:
            r = canonical_scalar(Fraction(y) / Fraction(x))
        quads = by_slope.setdefault(r, [0, 0, 0, 0])
        quads[_quadrant(x, y)] += 1
    lines = tuple(
        OriginLine(slope=r, count=sum(q), quadrant_counts=tuple(q))
        for r, q in sorted(by_slope.items())
    )
    return P, lines
