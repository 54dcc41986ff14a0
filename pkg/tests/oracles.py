"""Independent brute-force oracles.

Everything here is plain-Python pair enumeration, kept deliberately
separate from the package's vectorized/dense paths so tests compare two
genuinely different routes to the same value.
"""

from fractions import Fraction
from itertools import product

from fewdist.geometry import INFINITY


def brute_sumset(xs, ys):
    return sorted({x + y for x in xs for y in ys})


def brute_diffset(xs, ys):
    return sorted({x - y for x in xs for y in ys})


def brute_products(xs, ys):
    return sorted({x * y for x in xs for y in ys})


def brute_ratios(xs, ys):
    return sorted({Fraction(x) / Fraction(y) for x in xs for y in ys})


def brute_squares(xs):
    return sorted({x * x for x in xs})


def brute_iterated(m, n, xs):
    return sorted(
        {
            sum(p) - sum(q)
            for p in product(xs, repeat=m)
            for q in product(xs, repeat=n)
        }
    )


def brute_rep_count(xs, d):
    return sum(1 for a in xs for b in xs if a - b == d)


def brute_distance_set(points):
    return sorted(
        {
            (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
            for p in points
            for q in points
        }
    )


def brute_slopes(points):
    slopes = set()
    for p in points:
        for q in points:
            if p == q:
                continue
            if p[0] == q[0]:
                slopes.add(INFINITY)
            else:
                slopes.add(Fraction(p[1] - q[1]) / Fraction(p[0] - q[0]))
    return slopes


def brute_vector_sums(ps, qs):
    return sorted({(p[0] + q[0], p[1] + q[1]) for p in ps for q in qs})


def is_arithmetic_progression(xs):
    xs = sorted(xs)
    if len(xs) <= 2:
        return True
    step = xs[1] - xs[0]
    return all(b - a == step for a, b in zip(xs, xs[1:]))
