"""Feasibility limits for pairwise-enumeration operations.

Every operation that enumerates pairs (or triples) checks its projected
work against these limits *before* allocating anything. Refusal raises
FeasibilityError; nothing is ever silently downsampled.
"""

from dataclasses import dataclass

from .errors import FeasibilityError

#: Default cap on enumerated pairs per operation.
DEFAULT_MAX_PAIRS = 500_000_000

#: Default cap on dense presence-table slots (one slot per integer in the
#: result range; the table spends one byte per slot).
DEFAULT_MAX_BITMAP_BITS = 2**31


@dataclass(frozen=True)
class Limits:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_bitmap_bits: int = DEFAULT_MAX_BITMAP_BITS


DEFAULT_LIMITS = Limits()


def guard_pairs(count: int, limits: Limits, operation: str) -> int:
    """Refuse an operation whose projected pair count exceeds the limit."""
    if count > limits.max_pairs:
        raise FeasibilityError(
            f"{operation}: estimated pair count {count} exceeds max-pairs "
            f"{limits.max_pairs}"
        )
    return count
