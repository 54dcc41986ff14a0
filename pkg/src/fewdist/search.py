"""Stochastic search for near-extremal few-distance integer sets.

Simulated annealing over n-element subsets of [0, U], minimizing the
number of distinct squared distances of A x A or maximizing the
sharpness surrogate rho^8 = |A-A|^8 |A| / |Delta|^8 (the 8th power
avoids the irrational root and is argmax-equivalent). Scores are exact;
floating point enters only inside the Metropolis exponential. Runs are
bit-reproducible for a fixed config: restart r uses seed + r.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .audits import (
    MAIN_THEOREM,
    RATIO_ONLY,
    RUDIN_EXPONENT,
    AuditRecord,
    check_main_theorem,
    check_rudin_exponent,
    error_record,
)
from .errors import DomainError, FeasibilityError, WorkbenchError
from .limits import DEFAULT_LIMITS, Limits, guard_pairs
from .numset import NumSet, Scalar, canonical_scalar
from .setops import OUTER_MAX_ENTRIES, difference_set, square_set, sumset

MIN_DISTANCES = "min-distances"
MAX_RHO = "max-rho"
OBJECTIVES = (MIN_DISTANCES, MAX_RHO)

AP = "ap"
GP = "gp"
RANDOM = "random"
PERTURBED_AP = "perturbed-ap"
SQUARES = "squares"
FAMILY_KINDS = (AP, GP, RANDOM, PERTURBED_AP, SQUARES)

#: Pinned generator identity; emitted with every search so traces stay
#: comparable across builds.
RNG_ALGORITHM = "MT19937"
RNG_LIBRARY = "cpython-random"


@dataclass(frozen=True)
class FamilySpec:
    """Deterministic set family: ap, gp, random, perturbed-ap, squares."""

    kind: str
    gap: int = 1
    ratio: Scalar = 2
    radius: int = 1
    seed: int = 0
    universe: int | None = None


def generate_family(spec: FamilySpec, n: int) -> NumSet:
    if n < 1:
        raise DomainError("family size must be at least 1")
    kind = spec.kind
    if kind == AP:
        if spec.gap == 0:
            raise DomainError("ap family needs a nonzero gap")
        return NumSet(i * spec.gap for i in range(n))
    if kind == GP:
        r = canonical_scalar(
            spec.ratio if isinstance(spec.ratio, (int, Fraction)) else Fraction(spec.ratio)
        )
        if r <= 1:
            raise DomainError("gp family needs ratio > 1")
        return NumSet(r**k for k in range(n))
    if kind == RANDOM:
        if spec.universe is None or spec.universe + 1 < n:
            raise DomainError("random family needs universe >= size - 1")
        rng = random.Random(spec.seed)
        return NumSet(rng.sample(range(spec.universe + 1), n))
    if kind == PERTURBED_AP:
        if spec.radius < 0:
            raise DomainError("perturbed-ap family needs radius >= 0")
        reachable = set()
        for i in range(n):
            base = i * spec.gap
            reachable.update(range(base - spec.radius, base + spec.radius + 1))
        if len(reachable) < n:
            raise DomainError("perturbation radius causes inevitable collision")
        rng = random.Random(spec.seed)
        used: set[int] = set()
        for i in range(n):
            base = i * spec.gap
            window = range(base - spec.radius, base + spec.radius + 1)
            if all(v in used for v in window):
                raise DomainError("perturbation radius causes inevitable collision")
            value = base + rng.randint(-spec.radius, spec.radius)
            while value in used:
                value = base + rng.randint(-spec.radius, spec.radius)
            used.add(value)
        return NumSet(used)
    if kind == SQUARES:
        return NumSet(i * i for i in range(n))
    raise DomainError(f"unknown family kind {spec.kind!r}")


# largest |value| for which the int64 objective path cannot overflow:
# needs 2 * (2*max)^2 < 2^63
_OBJ_INT64_MAX = 1_000_000_000


def _delta_cards_int(values: list[int], limits: Limits) -> tuple[int, int]:
    """(|A-A|, |Delta(AxA)|) for bounded integer values, vectorized."""
    guard_pairs(len(values) ** 2, limits, "objective_value")
    arr = np.array(values, dtype=np.int64)
    d = np.unique(np.subtract.outer(arr, arr))
    sq = np.unique(d[d >= 0] ** 2)
    guard_pairs(int(sq.size) ** 2, limits, "objective_value")
    if sq.size * sq.size <= OUTER_MAX_ENTRIES:
        delta_card = int(np.unique(np.add.outer(sq, sq)).size)
    else:
        rows = max(1, OUTER_MAX_ENTRIES // max(1, int(sq.size)))
        parts = [
            np.unique(np.add.outer(sq[i : i + rows], sq))
            for i in range(0, int(sq.size), rows)
        ]
        delta_card = int(np.unique(np.concatenate(parts)).size)
    return int(d.size), delta_card


def _delta_cards(A: NumSet, limits: Limits) -> tuple[int, int]:
    span = A.integer_universe
    if span is not None and max(abs(span[0]), abs(span[1])) <= _OBJ_INT64_MAX:
        return _delta_cards_int(list(A.elements), limits)
    D = difference_set(A, A, limits=limits)
    sq = square_set(D)
    return len(D), len(sumset(sq, sq, limits=limits))


def objective_value(
    A: NumSet, objective: str, *, limits: Limits = DEFAULT_LIMITS
) -> Scalar:
    """MIN_DISTANCES: |Delta(AxA)| as an int. MAX_RHO: exact rho^8."""
    if objective not in OBJECTIVES:
        raise DomainError(f"unknown objective {objective!r}")
    d_card, delta_card = _delta_cards(A, limits)
    if objective == MIN_DISTANCES:
        return delta_card
    return canonical_scalar(Fraction(d_card**8 * len(A), delta_card**8))


@dataclass(frozen=True)
class SearchConfig:
    n: int
    universe: int
    objective: str
    seed: int
    iterations: int = 50_000
    initial_temperature: float = 2.0
    cooling_rate: float = 0.999
    restarts: int = 4
    trace_every: int = 1_000


def validate_config(config: SearchConfig) -> None:
    if config.n < 1:
        raise DomainError("n: must be at least 1")
    if config.universe < 0:
        raise DomainError("universe: must be nonnegative")
    if config.n > config.universe + 1:
        raise DomainError("n: exceeds universe size (need n <= universe + 1)")
    if config.objective not in OBJECTIVES:
        raise DomainError(f"objective: unknown value {config.objective!r}")
    if config.iterations < 0:
        raise DomainError("iterations: must be nonnegative")
    if not config.initial_temperature > 0:
        raise DomainError("initial_temperature: must be positive")
    if not 0 < config.cooling_rate < 1:
        raise DomainError("cooling_rate: must be in (0, 1)")
    if config.restarts < 1:
        raise DomainError("restarts: must be at least 1")
    if config.trace_every < 1:
        raise DomainError("trace_every: must be at least 1")


@dataclass
class SearchState:
    """Final annealer state. trace holds (iteration, best score so far)
    samples; iteration indices run restart-major."""

    incumbent: NumSet
    incumbent_score: Scalar
    best: NumSet
    best_score: Scalar
    trace: tuple
    aborted: bool = False


def _score_with_dcard(values: list[int], objective: str, limits: Limits):
    d_card, delta_card = _delta_cards_int(values, limits)
    if objective == MIN_DISTANCES:
        return delta_card, d_card
    return canonical_scalar(Fraction(d_card**8 * len(values), delta_card**8)), d_card


def anneal(config: SearchConfig, *, limits: Limits = DEFAULT_LIMITS) -> SearchState:
    """Simulated annealing; pure function of (config, limits).

    Move: replace one uniformly chosen element with a uniformly chosen
    unused universe element. Improving moves are always accepted (exact
    comparison); worsening moves with probability exp(-delta/T), where
    delta enters as a float only here. Geometric cooling per iteration.
    Restart r runs on seed + r; best is tracked across restarts, ties
    under MIN_DISTANCES broken toward larger |A-A|.
    """
    validate_config(config)
    minimize = config.objective == MIN_DISTANCES
    if config.universe > _OBJ_INT64_MAX:
        raise DomainError(f"universe: must be at most {_OBJ_INT64_MAX}")

    import math

    def better(a, b) -> bool:
        return a < b if minimize else a > b

    universe_size = config.universe + 1
    best_values: list[int] | None = None
    best_score = None
    best_d_card = -1
    inc_values: list[int] = []
    inc_score = None
    trace: list[tuple] = []
    aborted = False

    for restart in range(config.restarts):
        rng = random.Random(config.seed + restart)
        inc_values = rng.sample(range(universe_size), config.n)
        members = set(inc_values)
        try:
            inc_score, inc_d = _score_with_dcard(inc_values, config.objective, limits)
        except FeasibilityError:
            aborted = True
            break
        if (
            best_score is None
            or better(inc_score, best_score)
            or (minimize and inc_score == best_score and inc_d > best_d_card)
        ):
            best_values = list(inc_values)
            best_score = inc_score
            best_d_card = inc_d
        # +1 spacing keeps restart-boundary indices unique: the initial
        # entry of restart r never collides with the last sample of r-1
        base = restart * (config.iterations + 1)
        trace.append((base, best_score))
        if config.n == universe_size:
            continue  # move exhaustion: no legal replacement exists
        temperature = config.initial_temperature
        for it in range(1, config.iterations + 1):
            slot = rng.randrange(config.n)
            replacement = rng.randrange(universe_size)
            while replacement in members:
                replacement = rng.randrange(universe_size)
            old = inc_values[slot]
            inc_values[slot] = replacement
            try:
                cand_score, cand_d = _score_with_dcard(
                    inc_values, config.objective, limits
                )
            except FeasibilityError:
                inc_values[slot] = old
                aborted = True
                break
            if better(cand_score, inc_score):
                accept = True
            else:
                delta = (
                    float(cand_score - inc_score)
                    if minimize
                    else float(inc_score - cand_score)
                )
                accept = rng.random() < math.exp(-delta / temperature)
            if accept:
                members.discard(old)
                members.add(replacement)
                inc_score = cand_score
                if (
                    better(cand_score, best_score)
                    or (minimize and cand_score == best_score and cand_d > best_d_card)
                ):
                    best_values = list(inc_values)
                    best_score = cand_score
                    best_d_card = cand_d
            else:
                inc_values[slot] = old
            temperature *= config.cooling_rate
            if it % config.trace_every == 0:
                trace.append((base + it, best_score))
        if aborted:
            break

    return SearchState(
        incumbent=NumSet(inc_values),
        incumbent_score=inc_score,
        best=NumSet(best_values or []),
        best_score=best_score,
        trace=tuple(trace),
        aborted=aborted,
    )


def scan(
    specs: list[FamilySpec],
    sizes: list[int],
    *,
    limits: Limits = DEFAULT_LIMITS,
) -> list[AuditRecord]:
    """Main-theorem and Rudin-exponent ratio reports per (family, size).

    Order is spec-major, size-minor. Per-instance errors become error
    records; the scan continues.
    """
    records: list[AuditRecord] = []
    for spec in specs:
        for n in sizes:
            try:
                A = generate_family(spec, n)
            except WorkbenchError as exc:
                for sid in (MAIN_THEOREM, RUDIN_EXPONENT):
                    rec = error_record(sid, str(exc), {"requested_size": n})
                    rec.extras["family"] = spec.kind
                    records.append(rec)
                continue
            try:
                rec = check_main_theorem(A, RATIO_ONLY, limits=limits)
            except WorkbenchError as exc:
                rec = error_record(MAIN_THEOREM, str(exc), {"A": len(A)})
            rec.extras["family"] = spec.kind
            records.append(rec)
            try:
                rec = check_rudin_exponent(A, limits=limits)
            except WorkbenchError as exc:
                rec = error_record(RUDIN_EXPONENT, str(exc), {"A": len(A)})
            rec.extras["family"] = spec.kind
            records.append(rec)
    return records
