from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fewdist.errors import DomainError
from fewdist.geometry import cartesian_square, distance_set
from fewdist.numset import NumSet
from fewdist.search import (
    AP,
    GP,
    MAX_RHO,
    MIN_DISTANCES,
    PERTURBED_AP,
    RANDOM,
    SQUARES,
    FamilySpec,
    SearchConfig,
    anneal,
    generate_family,
    objective_value,
    scan,
    validate_config,
)

from oracles import brute_sumset, brute_squares, brute_diffset


class TestFamilies:
    def test_ap(self):
        assert generate_family(FamilySpec(AP, gap=1), 4).elements == (0, 1, 2, 3)
        assert generate_family(FamilySpec(AP, gap=3), 3).elements == (0, 3, 6)

    def test_gp(self):
        assert generate_family(FamilySpec(GP, ratio=2), 3).elements == (1, 2, 4)
        out = generate_family(FamilySpec(GP, ratio=Fraction(3, 2)), 3)
        assert out.elements == (1, Fraction(3, 2), Fraction(9, 4))

    def test_squares(self):
        assert generate_family(FamilySpec(SQUARES), 4).elements == (0, 1, 4, 9)

    def test_random_deterministic(self):
        spec = FamilySpec(RANDOM, seed=11, universe=100)
        a = generate_family(spec, 6)
        b = generate_family(spec, 6)
        assert a == b and len(a) == 6
        assert all(0 <= v <= 100 for v in a.elements)

    def test_perturbed_ap(self):
        spec = FamilySpec(PERTURBED_AP, gap=10, radius=2, seed=3)
        out = generate_family(spec, 5)
        assert len(out) == 5
        base = [0, 10, 20, 30, 40]
        assert all(min(abs(v - b) for b in base) <= 2 for v in out.elements)

    def test_invalid_parameters(self):
        with pytest.raises(DomainError):
            generate_family(FamilySpec(AP, gap=0), 3)
        with pytest.raises(DomainError):
            generate_family(FamilySpec(GP, ratio=1), 3)
        with pytest.raises(DomainError):
            generate_family(FamilySpec(RANDOM, universe=3), 10)
        # gap 0 means pure jitter: only 2*radius+1 values are reachable
        with pytest.raises(DomainError, match="inevitable collision"):
            generate_family(FamilySpec(PERTURBED_AP, gap=0, radius=1), 4)
        with pytest.raises(DomainError):
            generate_family(FamilySpec("fibonacci"), 3)

    def test_perturbed_ap_radius_zero_with_wide_gap(self):
        out = generate_family(FamilySpec(PERTURBED_AP, gap=5, radius=0), 4)
        assert out.elements == (0, 5, 10, 15)


class TestObjective:
    def test_min_distances_example(self):
        assert objective_value(NumSet([0, 1, 2, 3]), MIN_DISTANCES) == 10

    def test_max_rho_example(self):
        assert objective_value(NumSet([0, 1]), MAX_RHO) == 2

    def test_scale_invariance(self):
        a = NumSet([0, 3, 7, 11])
        b = NumSet(5 * v + 2 for v in a.elements)
        for obj in (MIN_DISTANCES, MAX_RHO):
            assert objective_value(a, obj) == objective_value(b, obj)

    def test_objective_soundness_dual_route(self):
        import random

        rng = random.Random(5)
        for _ in range(10):
            a = NumSet(rng.sample(range(200), 6))
            assert objective_value(a, MIN_DISTANCES) == len(
                distance_set(cartesian_square(a))
            )

    @given(
        st.lists(st.integers(0, 60), min_size=2, max_size=6),
        st.lists(st.integers(0, 60), min_size=2, max_size=6),
    )
    @settings(max_examples=30)
    def test_rho_surrogate_monotone(self, xs, ys):
        a, b = NumSet(xs), NumSet(ys)
        sa = objective_value(a, MAX_RHO)
        sb = objective_value(b, MAX_RHO)
        # rho^8 ordering must agree with rho ordering
        d_a, delta_a = len(brute_diffset(a.elements, a.elements)), len(
            brute_sumset(
                brute_squares(brute_diffset(a.elements, a.elements)),
                brute_squares(brute_diffset(a.elements, a.elements)),
            )
        )
        d_b, delta_b = len(brute_diffset(b.elements, b.elements)), len(
            brute_sumset(
                brute_squares(brute_diffset(b.elements, b.elements)),
                brute_squares(brute_diffset(b.elements, b.elements)),
            )
        )
        rho_a = d_a * len(a) ** 0.125 / delta_a
        rho_b = d_b * len(b) ** 0.125 / delta_b
        if abs(rho_a - rho_b) > 1e-9:
            assert (sa > sb) == (rho_a > rho_b)


def _quick_config(**overrides):
    base = dict(
        n=5,
        universe=50,
        objective=MIN_DISTANCES,
        seed=7,
        iterations=200,
        restarts=2,
        trace_every=50,
    )
    base.update(overrides)
    return SearchConfig(**base)


class TestAnneal:
    def test_deterministic_replay(self):
        config = _quick_config()
        s1 = anneal(config)
        s2 = anneal(config)
        assert s1.best == s2.best
        assert s1.best_score == s2.best_score
        assert s1.trace == s2.trace

    def test_best_monotone_and_bounded_by_initial(self):
        state = anneal(_quick_config())
        scores = [s for _, s in state.trace]
        assert all(a >= b for a, b in zip(scores, scores[1:]))
        assert state.best_score <= state.trace[0][1]

    def test_best_score_is_exact_objective(self):
        state = anneal(_quick_config())
        assert objective_value(state.best, MIN_DISTANCES) == state.best_score

    def test_incumbent_invariants(self):
        config = _quick_config()
        state = anneal(config)
        assert len(state.incumbent) == config.n
        assert all(0 <= v <= config.universe for v in state.incumbent.elements)

    def test_degenerate_universe(self):
        config = _quick_config(n=6, universe=5, iterations=1000)
        state = anneal(config)
        assert state.best.elements == (0, 1, 2, 3, 4, 5)
        assert len(state.trace) == config.restarts

    def test_max_rho_runs(self):
        state = anneal(_quick_config(objective=MAX_RHO, iterations=100))
        assert isinstance(state.best_score, (int, Fraction))
        scores = [s for _, s in state.trace]
        assert all(a <= b for a, b in zip(scores, scores[1:]))

    def test_infeasible_objective_aborts_with_partial_trace(self):
        from fewdist.limits import Limits

        state = anneal(_quick_config(), limits=Limits(max_pairs=4))
        assert state.aborted is True
        assert state.trace == ()

    def test_config_validation_messages(self):
        with pytest.raises(DomainError, match="cooling_rate"):
            validate_config(_quick_config(cooling_rate=1.5))
        with pytest.raises(DomainError, match="n:"):
            validate_config(_quick_config(n=0))
        with pytest.raises(DomainError, match="universe"):
            validate_config(_quick_config(universe=-1))
        with pytest.raises(DomainError, match="objective"):
            validate_config(_quick_config(objective="fastest"))


class TestScan:
    def test_ap_sizes(self):
        records = scan([FamilySpec(AP)], [4, 8])
        assert len(records) == 4
        main4, rudin4, main8, rudin8 = records
        assert main4.statement_id == "MAIN_THEOREM"
        assert (main4.sizes["A"], main4.sizes["D"], main4.sizes["delta"]) == (4, 7, 10)
        assert rudin4.statement_id == "RUDIN_EXPONENT"
        # independent oracle for n = 8
        d8 = brute_diffset(range(8), range(8))
        delta8 = brute_sumset(brute_squares(d8), brute_squares(d8))
        assert (main8.sizes["D"], main8.sizes["delta"]) == (len(d8), len(delta8))

    def test_empty_sizes(self):
        assert scan([FamilySpec(AP)], []) == []

    def test_gp_difference_cardinality(self):
        a = generate_family(FamilySpec(GP, ratio=2), 4)
        assert a.elements == (1, 2, 4, 8)
        assert len(brute_diffset(a.elements, a.elements)) == 13
        records = scan([FamilySpec(GP, ratio=2)], [4])
        assert records[0].sizes["D"] == 13

    def test_error_recorded_and_continues(self):
        records = scan([FamilySpec(GP, ratio=Fraction(3, 2))], [3, 4])
        rudins = [r for r in records if r.statement_id == "RUDIN_EXPONENT"]
        assert all(r.error is not None for r in rudins)
        mains = [r for r in records if r.statement_id == "MAIN_THEOREM"]
        assert all(r.error is None for r in mains)
        assert len(records) == 4

    def test_spec_major_order(self):
        records = scan([FamilySpec(AP), FamilySpec(SQUARES)], [2, 3])
        kinds = [r.extras["family"] for r in records]
        assert kinds == ["ap"] * 4 + ["squares"] * 4
