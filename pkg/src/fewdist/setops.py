"""One-dimensional set calculus: sums, differences, products, ratios.

All operations are pure functions over NumSet and return new NumSets.
Every pairwise enumeration checks the projected pair count against the
configured limits before allocating. Integer inputs take vectorized
paths (dense presence table or outer-product + unique); the generic
path enumerates pairs with exact rational arithmetic. The paths are
value-identical by construction and by test.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DomainError, FeasibilityError
from .limits import DEFAULT_LIMITS, Limits, guard_pairs
from .numset import NumSet, Scalar, canonical_scalar

#: Below this pair count plain Python beats numpy dispatch overhead.
PY_MAX_PAIRS = 1024

#: Largest outer-product matrix materialized in one piece (int64 entries).
OUTER_MAX_ENTRIES = 1 << 22

#: Dense presence table engages above this pair count when the range is compact.
DENSE_MIN_PAIRS = 1 << 16


def _require_nonempty(*sets: NumSet) -> None:
    for s in sets:
        if len(s) == 0:
            raise DomainError("empty set")


def _guard_slots(slots: int, limits: Limits, operation: str) -> None:
    if slots > limits.max_bitmap_bits:
        raise FeasibilityError(
            f"{operation}: dense table needs {slots} slots, exceeds "
            f"max-bitmap-bits {limits.max_bitmap_bits}"
        )


def _addsub_int(
    xa: np.ndarray,
    ya: np.ndarray,
    subtract: bool,
    limits: Limits,
    pairs: int,
    method: str | None = None,
) -> np.ndarray:
    """Sorted unique {x +/- y} over int64 arrays.

    method: None picks automatically; "dense" / "outer" / "chunked"
    force a path (used by the equivalence tests).
    """
    if subtract:
        ya = (-ya)[::-1]
    lo = int(xa[0]) + int(ya[0])
    hi = int(xa[-1]) + int(ya[-1])
    span = hi - lo + 1
    if method is None:
        if span <= limits.max_bitmap_bits and pairs >= DENSE_MIN_PAIRS and span <= pairs * 64:
            method = "dense"
        elif pairs <= OUTER_MAX_ENTRIES:
            method = "outer"
        elif span <= limits.max_bitmap_bits:
            method = "dense"
        else:
            method = "chunked"

    if method == "dense":
        _guard_slots(span, limits, "sumset" if not subtract else "difference_set")
        table = np.zeros(span, dtype=bool)
        small, big = (xa, ya) if xa.size <= ya.size else (ya, xa)
        big_off = big - lo
        for v in small.tolist():
            table[big_off + v] = True
        return np.flatnonzero(table) + lo
    if method == "outer":
        return np.unique(np.add.outer(xa, ya))
    rows = max(1, OUTER_MAX_ENTRIES // max(1, int(ya.size)))
    parts = [
        np.unique(np.add.outer(xa[i : i + rows], ya))
        for i in range(0, int(xa.size), rows)
    ]
    return np.unique(np.concatenate(parts))


def _pairwise_python(X: NumSet, Y: NumSet, fn) -> NumSet:
    return NumSet(fn(x, y) for x in X.elements for y in Y.elements)


def _div(x: Scalar, y: Scalar) -> Scalar:
    if isinstance(x, int) and isinstance(y, int):
        return canonical_scalar(Fraction(x, y))
    return canonical_scalar(Fraction(x) / Fraction(y))


def sumset(X: NumSet, Y: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """{x + y : x in X, y in Y}."""
    _require_nonempty(X, Y)
    pairs = guard_pairs(len(X) * len(Y), limits, "sumset")
    xa, ya = X.int64_array(), Y.int64_array()
    if xa is not None and ya is not None and pairs > PY_MAX_PAIRS:
        return NumSet._from_int64(_addsub_int(xa, ya, False, limits, pairs))
    return _pairwise_python(X, Y, lambda x, y: x + y)


def difference_set(X: NumSet, Y: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """{x - y : x in X, y in Y}; X = Y gives a 0-containing symmetric set."""
    _require_nonempty(X, Y)
    pairs = guard_pairs(len(X) * len(Y), limits, "difference_set")
    xa, ya = X.int64_array(), Y.int64_array()
    if xa is not None and ya is not None and pairs > PY_MAX_PAIRS:
        return NumSet._from_int64(_addsub_int(xa, ya, True, limits, pairs))
    return _pairwise_python(X, Y, lambda x, y: x - y)


def product_set(X: NumSet, Y: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """{x * y : x in X, y in Y}."""
    _require_nonempty(X, Y)
    pairs = guard_pairs(len(X) * len(Y), limits, "product_set")
    xa, ya = X.int64_array(), Y.int64_array()
    if xa is not None and ya is not None and pairs > PY_MAX_PAIRS:
        mx = max(abs(int(xa[0])), abs(int(xa[-1])))
        my = max(abs(int(ya[0])), abs(int(ya[-1])))
        if mx * my < 2**63:
            if pairs <= OUTER_MAX_ENTRIES:
                return NumSet._from_int64(np.unique(np.multiply.outer(xa, ya)))
            rows = max(1, OUTER_MAX_ENTRIES // max(1, int(ya.size)))
            parts = [
                np.unique(np.multiply.outer(xa[i : i + rows], ya))
                for i in range(0, int(xa.size), rows)
            ]
            return NumSet._from_int64(np.unique(np.concatenate(parts)))
    return _pairwise_python(X, Y, lambda x, y: x * y)


def ratio_set(X: NumSet, Y: NumSet, *, limits: Limits = DEFAULT_LIMITS) -> NumSet:
    """{x / y : x in X, y in Y}; 0 must not occur in Y."""
    _require_nonempty(X, Y)
    if 0 in Y:
        raise DomainError("zero divisor element")
    guard_pairs(len(X) * len(Y), limits, "ratio_set")
    return _pairwise_python(X, Y, _div)


def square_set(X: NumSet) -> NumSet:
    """{x^2 : x in X}."""
    _require_nonempty(X)
    xa = X.int64_array()
    if xa is not None and len(X) > PY_MAX_PAIRS:
        mx = max(abs(int(xa[0])), abs(int(xa[-1])))
        if mx * mx < 2**63:
            return NumSet._from_int64(np.unique(xa * xa))
    return NumSet(x * x for x in X.elements)


def dilate(X: NumSet, c: Scalar) -> NumSet:
    """{c * x : x in X}; c = 0 collapses a nonempty set to {0}."""
    c = canonical_scalar(c)
    if len(X) == 0:
        return NumSet()
    if c == 0:
        return NumSet([0])
    xa = X.int64_array()
    if xa is not None and isinstance(c, int) and len(X) > PY_MAX_PAIRS:
        mx = max(abs(int(xa[0])), abs(int(xa[-1])))
        if mx * abs(c) < 2**63:
            out = xa * c
            return NumSet._from_int64(out if c > 0 else out[::-1])
    ordered = X.elements if c > 0 else tuple(reversed(X.elements))
    return NumSet._from_sorted(tuple(canonical_scalar(c * x) for x in ordered))


def iterated_combination(
    m: int, n: int, S: NumSet, *, limits: Limits = DEFAULT_LIMITS
) -> NumSet:
    """mS - nS: the m-fold sumset of S minus the n-fold sumset of S.

    Left fold; each fold step re-checks feasibility against the actual
    intermediate size before allocating.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise DomainError("iterated_combination requires m, n >= 0 and m + n >= 1")
    _require_nonempty(S)
    acc = NumSet([0])
    for _ in range(m):
        acc = sumset(acc, S, limits=limits)
    for _ in range(n):
        acc = difference_set(acc, S, limits=limits)
    return acc


def rep_count(A: NumSet, d: Scalar) -> int:
    """Number of ordered pairs (a, b) in A x A with a - b = d."""
    _require_nonempty(A)
    d = canonical_scalar(d)
    members = set(A.elements)
    return sum(1 for a in A.elements if a - d in members)
