"""Exact scalars and canonical finite sets of them.

Scalars are arbitrary-precision rationals: plain Python ints where the
value is integral, fractions.Fraction otherwise. Fraction already keeps
the canonical form this package relies on (gcd-reduced, positive
denominator, value-exact equality/ordering/hashing), and ints hash and
compare consistently with Fraction, so the two can be mixed freely.

NumSet is an immutable, deduplicated, strictly increasing sequence of
scalars. All-integer sets carry their (lo, hi) bounds so that set
operations can run on int64 arrays instead of element-by-element
rational arithmetic; large integer sets may be backed directly by a
sorted numpy array and only materialize Python ints on demand.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import ParseError

Scalar = Union[int, Fraction]

#: Values above this do not fit safely into signed 64-bit intermediates
#: (two of them must still add without overflow).
INT64_SAFE = 2**62 - 1


def canonical_scalar(value: Scalar) -> Scalar:
    """Collapse integral Fractions to int; reject non-rational input."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, int):
        return value
    raise TypeError(f"not an exact scalar: {value!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse "p" or "p/q" into a canonical scalar.

    A negative denominator is accepted and normalized away; a zero
    denominator is an error.
    """
    body = text.strip()
    if "/" in body:
        num_text, _, den_text = body.partition("/")
        try:
            num = int(num_text.strip())
            den = int(den_text.strip())
        except ValueError:
            raise ParseError(f"invalid scalar {body!r}") from None
        if den == 0:
            raise ParseError(f"zero denominator in scalar {body!r}")
        return canonical_scalar(Fraction(num, den))
    try:
        return int(body)
    except ValueError:
        raise ParseError(f"invalid scalar {body!r}") from None


def format_scalar(value: Scalar) -> str:
    """Render a scalar as "p" or "p/q" (exact, no floating point)."""
    return str(value)


class NumSet:
    """Finite set of scalars in strictly increasing order, no duplicates.

    Instances are immutable and safe to share across threads. Integer
    sets may be backed by a sorted int64 array; ``elements`` materializes
    the Python-object view lazily.
    """

    __slots__ = ("_elems", "_arr", "_span")

    def __init__(self, values: Iterable[Scalar] = ()):
        elems = tuple(sorted({canonical_scalar(v) for v in values}))
        self._elems: tuple | None = elems
        self._arr: np.ndarray | None = None
        self._span = None
        if elems and all(isinstance(v, int) for v in elems):
            self._span = (elems[0], elems[-1])

    @classmethod
    def _from_int64(cls, arr: np.ndarray) -> "NumSet":
        """Wrap a sorted, deduplicated int64 array without copying.

        Callers must guarantee sortedness and uniqueness (np.unique and
        flatnonzero-based paths do).
        """
        self = object.__new__(cls)
        self._elems = None if arr.size else ()
        self._arr = arr if arr.size else None
        self._span = (int(arr[0]), int(arr[-1])) if arr.size else None
        return self

    @classmethod
    def _from_sorted(cls, elems: tuple) -> "NumSet":
        """Wrap an already sorted, deduplicated tuple of canonical scalars."""
        self = object.__new__(cls)
        self._elems = elems
        self._arr = None
        self._span = None
        if elems and all(isinstance(v, int) for v in elems):
            self._span = (elems[0], elems[-1])
        return self

    @property
    def elements(self) -> tuple:
        if self._elems is None:
            self._elems = tuple(self._arr.tolist())
        return self._elems

    @property
    def integer_universe(self) -> tuple[int, int] | None:
        """(lo, hi) bounds when every element is an integer, else None."""
        return self._span

    @property
    def is_integer(self) -> bool:
        return self._span is not None

    def int64_array(self) -> np.ndarray | None:
        """Sorted int64 view when the set is integral and in-bounds, else None."""
        if self._span is None:
            return None
        lo, hi = self._span
        if max(abs(lo), abs(hi)) > INT64_SAFE:
            return None
        if self._arr is None:
            self._arr = np.array(self._elems, dtype=np.int64)
        return self._arr

    def __len__(self) -> int:
        return len(self._elems) if self._elems is not None else int(self._arr.size)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.elements)

    def __contains__(self, value) -> bool:
        try:
            v = canonical_scalar(value)
        except TypeError:
            return False
        if self._arr is not None and isinstance(v, int):
            i = int(np.searchsorted(self._arr, v))
            return i < self._arr.size and int(self._arr[i]) == v
        elems = self.elements
        i = bisect.bisect_left(elems, v)
        return i < len(elems) and elems[i] == v

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumSet):
            return NotImplemented
        if len(self) != len(other):
            return False
        a, b = self._arr, other._arr
        if a is not None and b is not None:
            return bool(np.array_equal(a, b))
        return self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        n = len(self)
        if n > 8:
            head = ", ".join(format_scalar(v) for v in self.elements[:4])
            return f"NumSet({{{head}, ...}} size={n})"
        body = ", ".join(format_scalar(v) for v in self.elements)
        return f"NumSet({{{body}}})"


def parse_numset(text: str, source: str = "<string>") -> NumSet:
    """Parse the shared set file format: one scalar per line.

    Lines starting with '#' are comments; blank lines are skipped;
    duplicates are permitted and removed. Errors name source:lineno.
    """
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_scalar(line))
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
    return NumSet(values)


def load_numset(path) -> NumSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_numset(fh.read(), source=str(path))


def dump_numset(ns: NumSet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for v in ns.elements:
            fh.write(format_scalar(v) + "\n")
