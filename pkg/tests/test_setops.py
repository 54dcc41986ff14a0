from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fewdist.errors import DomainError, FeasibilityError
from fewdist.limits import Limits
from fewdist.numset import NumSet
from fewdist.setops import (
    _addsub_int,
    difference_set,
    dilate,
    iterated_combination,
    product_set,
    ratio_set,
    rep_count,
    square_set,
    sumset,
)

from oracles import (
    brute_diffset,
    brute_iterated,
    brute_products,
    brute_ratios,
    brute_rep_count,
    brute_squares,
    brute_sumset,
    is_arithmetic_progression,
)

small_int_sets = st.lists(
    st.integers(min_value=-40, max_value=40), min_size=1, max_size=8
).map(NumSet)
rational_sets = st.lists(
    st.fractions(min_value=-10, max_value=10, max_denominator=12),
    min_size=1,
    max_size=6,
).map(NumSet)


class TestSumset:
    def test_smallest_nontrivial(self):
        assert sumset(NumSet([0, 1]), NumSet([0, 1])).elements == (0, 1, 2)

    def test_squares_example(self):
        s = NumSet([0, 1, 4, 9])
        out = sumset(s, s)
        assert out.elements == tuple(brute_sumset(s.elements, s.elements))
        assert len(out) == 10

    def test_singleton_translation(self):
        y = NumSet([2, 5, 11])
        out = sumset(NumSet([7]), y)
        assert out.elements == (9, 12, 18)
        assert len(out) == len(y)

    def test_empty_rejected(self):
        with pytest.raises(DomainError, match="empty set"):
            sumset(NumSet(), NumSet([1]))

    @given(small_int_sets, small_int_sets)
    def test_commutative_and_bounds(self, x, y):
        out = sumset(x, y)
        assert out == sumset(y, x)
        assert max(len(x), len(y)) <= len(out) <= len(x) * len(y)

    @given(rational_sets, rational_sets)
    def test_rational_matches_oracle(self, x, y):
        assert sumset(x, y).elements == tuple(brute_sumset(x.elements, y.elements))

    def test_ap_equality_case_exhaustive(self):
        # |X+X| = 2|X|-1 iff X is an AP, for all X in {0..6} with |X| <= 5
        universe = range(7)
        for size in range(1, 6):
            for subset in combinations(universe, size):
                x = NumSet(subset)
                minimal = len(sumset(x, x)) == 2 * len(x) - 1
                assert minimal == is_arithmetic_progression(subset)


class TestDifferenceSet:
    def test_ap_example(self):
        a = NumSet([0, 1, 2, 3])
        out = difference_set(a, a)
        assert out.elements == (-3, -2, -1, 0, 1, 2, 3)

    def test_singleton(self):
        assert difference_set(NumSet([5]), NumSet([5])).elements == (0,)

    def test_two_elements(self):
        a = NumSet([0, 1])
        assert difference_set(a, a).elements == (-1, 0, 1)

    @given(small_int_sets)
    def test_symmetric_and_contains_zero(self, a):
        d = difference_set(a, a)
        assert 0 in d
        assert d == dilate(d, -1)

    @given(rational_sets, rational_sets)
    def test_rational_matches_oracle(self, x, y):
        assert difference_set(x, y).elements == tuple(
            brute_diffset(x.elements, y.elements)
        )


class TestProductAndRatio:
    def test_product_examples(self):
        s = NumSet([1, 2])
        assert product_set(s, s).elements == (1, 2, 4)
        assert product_set(NumSet([0]), NumSet([3, 7])).elements == (0,)
        pm = NumSet([-1, 1])
        assert product_set(pm, pm).elements == (-1, 1)

    def test_ratio_examples(self):
        s = NumSet([1, 2])
        assert ratio_set(s, s).elements == (Fraction(1, 2), 1, 2)
        assert ratio_set(NumSet([7]), NumSet([7])).elements == (1,)
        g = NumSet([1, 2, 4])
        assert ratio_set(g, g).elements == (
            Fraction(1, 4),
            Fraction(1, 2),
            1,
            2,
            4,
        )

    def test_ratio_zero_divisor(self):
        with pytest.raises(DomainError, match="zero divisor element"):
            ratio_set(NumSet([1]), NumSet([0, 1]))

    @given(rational_sets, rational_sets)
    def test_product_matches_oracle(self, x, y):
        assert product_set(x, y).elements == tuple(
            brute_products(x.elements, y.elements)
        )

    @given(small_int_sets)
    def test_ratio_reciprocal_closure(self, x):
        positive = NumSet(v for v in x.elements if v != 0)
        if len(positive) == 0:
            return
        r = ratio_set(positive, positive)
        assert 1 in r
        assert all(Fraction(1) / Fraction(v) in r for v in r.elements)


class TestSquareAndDilate:
    def test_square_examples(self):
        assert square_set(NumSet([-2, -1, 0, 1, 2])).elements == (0, 1, 4)
        assert square_set(NumSet(range(-3, 4))).elements == (0, 1, 4, 9)
        assert square_set(NumSet([0])).elements == (0,)

    @given(small_int_sets)
    def test_square_matches_oracle(self, x):
        assert square_set(x).elements == tuple(brute_squares(x.elements))

    def test_symmetric_size(self):
        x = NumSet([-3, -1, 0, 1, 3])
        assert len(square_set(x)) == (len(x) + 1) // 2

    def test_dilate_examples(self):
        assert dilate(NumSet([1, 2, 4]), 2).elements == (2, 4, 8)
        x = NumSet([-1, 3, 7])
        assert dilate(x, 1) == x
        assert dilate(x, 0).elements == (0,)
        assert dilate(NumSet(), 0).elements == ()

    def test_dilate_result_is_canonical(self):
        out = dilate(NumSet([4, 8]), Fraction(1, 2))
        assert out.elements == (2, 4)
        assert all(isinstance(v, int) for v in out.elements)
        assert out.integer_universe == (2, 4)

    @given(small_int_sets, st.fractions(max_denominator=6))
    def test_dilate_cardinality(self, x, c):
        out = dilate(x, c)
        if c == 0:
            assert out.elements == (0,)
        else:
            assert len(out) == len(x)
            assert sorted(v / c for v in out.elements) == list(x.elements)


class TestIteratedCombination:
    def test_examples(self):
        s = NumSet([0, 1, 3])
        assert iterated_combination(1, 1, s).elements == (-3, -2, -1, 0, 1, 2, 3)
        assert iterated_combination(1, 0, s) == s
        assert iterated_combination(2, 0, NumSet([0, 1])).elements == (0, 1, 2)

    def test_pure_negation(self):
        s = NumSet([1, 2, 5])
        assert iterated_combination(0, 1, s).elements == (-5, -2, -1)

    @given(
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=2),
        st.lists(st.integers(min_value=-6, max_value=6), min_size=1, max_size=4),
    )
    @settings(max_examples=40)
    def test_matches_direct_enumeration(self, m, n, values):
        if m + n < 1:
            return
        s = NumSet(values)
        assert iterated_combination(m, n, s).elements == tuple(
            brute_iterated(m, n, s.elements)
        )

    def test_invalid_orders(self):
        with pytest.raises(DomainError):
            iterated_combination(0, 0, NumSet([1]))

    def test_guard_triggers_before_allocation(self):
        s = NumSet(range(100))
        with pytest.raises(FeasibilityError, match="pair count"):
            iterated_combination(4, 4, s, limits=Limits(max_pairs=10_000))


class TestRepCount:
    def test_examples(self):
        a = NumSet([0, 1, 2, 3])
        assert rep_count(a, 1) == 3
        assert rep_count(a, 0) == len(a)
        assert rep_count(a, 5) == 0
        assert rep_count(a, Fraction(1, 2)) == 0

    @given(small_int_sets)
    def test_total_is_square(self, a):
        d = difference_set(a, a)
        assert sum(rep_count(a, v) for v in d.elements) == len(a) ** 2

    @given(small_int_sets, st.integers(min_value=-5, max_value=5))
    def test_matches_oracle(self, a, d):
        assert rep_count(a, d) == brute_rep_count(a.elements, d)


class TestFeasibilityAndPaths:
    def test_refusal_names_pair_count(self):
        x = NumSet(range(1000))
        with pytest.raises(FeasibilityError, match="1000000"):
            sumset(x, x, limits=Limits(max_pairs=999_999))

    def test_dense_slot_refusal(self):
        import numpy as np

        xa = np.array([0, 10_000], dtype=np.int64)
        with pytest.raises(FeasibilityError, match="slots"):
            _addsub_int(xa, xa, False, Limits(max_bitmap_bits=100), 4, method="dense")

    @given(
        st.lists(st.integers(min_value=-3000, max_value=3000), min_size=1, max_size=60),
        st.lists(st.integers(min_value=-3000, max_value=3000), min_size=1, max_size=60),
        st.booleans(),
    )
    @settings(max_examples=50)
    def test_all_integer_paths_agree(self, xs, ys, subtract):
        import numpy as np

        x, y = NumSet(xs), NumSet(ys)
        xa, ya = x.int64_array(), y.int64_array()
        pairs = len(x) * len(y)
        limits = Limits()
        results = [
            _addsub_int(xa, ya, subtract, limits, pairs, method=m).tolist()
            for m in ("dense", "outer", "chunked")
        ]
        oracle = (
            brute_diffset(x.elements, y.elements)
            if subtract
            else brute_sumset(x.elements, y.elements)
        )
        assert results[0] == results[1] == results[2] == oracle

    def test_large_set_uses_array_backend(self):
        x = NumSet(range(0, 6000, 3))
        out = sumset(x, x)
        assert len(out) == 2 * len(x) - 1
        assert out.elements[0] == 0 and out.elements[-1] == 11994

    def test_product_chunked_path(self, monkeypatch):
        import fewdist.setops as so

        monkeypatch.setattr(so, "OUTER_MAX_ENTRIES", 2048)
        x = NumSet(range(1, 80))
        y = NumSet(range(3, 90, 2))
        assert product_set(x, y).elements == tuple(
            brute_products(x.elements, y.elements)
        )

    def test_huge_int_values_fall_back_to_python(self):
        big = 10**40
        x = NumSet([big, big + 1, big + 5])
        out = sumset(x, x)
        assert out.elements == tuple(brute_sumset(x.elements, x.elements))
        assert difference_set(x, x).elements == (-5, -4, -1, 0, 1, 4, 5)
