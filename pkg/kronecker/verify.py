"""Verification suites: closed forms against the randomized oracle.

Each suite walks a bounded universe of instances, checks one family of
closed-form statements against sampled ranks or oracle verdicts, and returns
a SuiteSummary. Oracle verdicts on invariant pairs are cached on disk so
repeated runs only pay for new instances.
"""
from __future__ import annotations

import logging
import random
import time
from itertools import combinations, product
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from kronecker.cache import clear_cache, get_cached_verdict, instance_key, save_cached_verdict
from kronecker.config import (
    BLOCKTRI_MAX_BLOCKS,
    CONJUGATION_ENTRY_RANGE,
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EXTRACT_CONJUGATES,
    EXTRACT_SAMPLES,
    MAX_REPORTED_FAILURES,
    MIN_SAMPLING_PRIME,
    RATIONAL_POINT_POOL,
    REGULAR_MULTIPOINT_BOUND,
    REGULAR_SUITE_POINTS,
    TRANSITIVITY_TRIPLES,
    VERDICT_CACHE_DIR,
    VERIFY_SUITES,
)
from kronecker.criteria import (
    embeds_pre_into_pri,
    embeds_preinjective,
    embeds_preprojective,
    embeds_regular,
    is_factor,
    oracle_verdict,
    theorem_verdict,
)
from kronecker.extract import extract_invariants
from kronecker.invariants import (
    DimensionVector,
    KroneckerInvariants,
    RepresentationType,
    as_point,
    dimension_vector,
    dualize,
    iter_invariants,
    iter_partitions_up_to,
    iter_regular_parts,
    random_invariants,
)
from kronecker.linalg import random_invertible, rank, sampling_field
from kronecker.models import DecisionMode, SuiteSummary
from kronecker.pencil import canonical_pencil, transpose_dual
from kronecker.rank import (
    block_profile,
    closed_form_ranks,
    rank_block_triangular,
    sample_block_triangular,
)

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 500


class SuiteRunner:
    """Shared state for one suite run: oracle settings, cache and tallies."""

    def __init__(
        self,
        summary: SuiteSummary,
        use_cache: bool,
        cache_dir: Path,
    ) -> None:
        self.summary = summary
        self.use_cache = use_cache
        self.cache_dir = cache_dir
        self.rng = random.Random(summary.seed)

    def record(self, ok: bool, description: str) -> None:
        s = self.summary
        s.instances += 1
        if ok:
            s.agreements += 1
        else:
            s.disagreements += 1
            logger.warning("[%s] disagreement: %s", s.suite, description)
            if len(s.failures) < MAX_REPORTED_FAILURES:
                s.failures.append(description)
        if s.instances % PROGRESS_EVERY == 0:
            logger.info("[%s] %d instances checked", s.suite, s.instances)

    def oracle(self, N: KroneckerInvariants, M: KroneckerInvariants) -> Tuple[bool, Tuple[int, int]]:
        """Oracle verdict and sampled ranks of both components, through the cache."""
        s = self.summary
        key = instance_key(N, M, s.prime, s.trials, s.seed)
        if self.use_cache:
            cached = get_cached_verdict(self.cache_dir, key)
            if cached is not None:
                s.cache_hits += 1
                return cached["embeds"], tuple(cached["sampled"])
        embeds, report = oracle_verdict(N, M, trials=s.trials, prime=s.prime, seed=s.seed)
        sampled = (report.component1.sampled_rank, report.component2.sampled_rank)
        if self.use_cache:
            save_cached_verdict(self.cache_dir, key, {"embeds": embeds, "sampled": list(sampled)})
        return embeds, sampled


def _pure(kind: str, parts: Sequence[int]) -> KroneckerInvariants:
    if kind == "P":
        return KroneckerInvariants(preprojective=tuple(parts))
    return KroneckerInvariants(preinjective=tuple(parts))


# === Same-family suites ===

def _check_pair(
    runner: SuiteRunner,
    N: KroneckerInvariants,
    M: KroneckerInvariants,
    expected: bool,
    formulas: Optional[Tuple[int, int]],
) -> None:
    embeds, sampled = runner.oracle(N, M)
    ok = embeds == expected and (formulas is None or tuple(formulas) == tuple(sampled))
    runner.record(
        ok,
        f"N={N} M={M}: criterion {expected}, oracle {embeds}, "
        f"formula ranks {formulas}, sampled ranks {list(sampled)}",
    )


def suite_pp(runner: SuiteRunner) -> None:
    bound = runner.summary.bound
    for a, d in product(list(iter_partitions_up_to(bound)), repeat=2):
        N, M = _pure("P", d), _pure("P", a)
        _check_pair(runner, N, M, embeds_preprojective(d, a), closed_form_ranks(N, M))
        for component in (1, 2):
            rows, cols = block_profile(a, d, component)
            formula = closed_form_ranks(N, M)[component - 1]
            runner.record(
                rank_block_triangular(rows, cols) == formula,
                f"a={list(a)} d={list(d)}: block profile rank differs from formula in component {component}",
            )


def suite_ii(runner: SuiteRunner) -> None:
    bound = runner.summary.bound
    for c, f in product(list(iter_partitions_up_to(bound)), repeat=2):
        N, M = _pure("I", f), _pure("I", c)
        _check_pair(runner, N, M, embeds_preinjective(f, c), closed_form_ranks(N, M))


def suite_rr(runner: SuiteRunner) -> None:
    """Every single-point pair, then every pair supported on two points.

    Two-point parts are capped at REGULAR_MULTIPOINT_BOUND per point; three
    points at full bound would be tens of millions of pairs.
    """
    bound = runner.summary.bound
    partitions = [p for p in iter_partitions_up_to(bound) if p]
    for point in REGULAR_SUITE_POINTS:
        pt = as_point(point)
        for b, e in product(partitions, repeat=2):
            N = KroneckerInvariants(regular=((pt, e),))
            M = KroneckerInvariants(regular=((pt, b),))
            _check_pair(runner, N, M, embeds_regular(N.regular, M.regular), closed_form_ranks(N, M))

    per_point = min(bound, REGULAR_MULTIPOINT_BOUND)
    for pair in combinations(REGULAR_SUITE_POINTS, 2):
        parts = [r for r in iter_regular_parts(pair, per_point) if len(r) == 2]
        for e, b in product(parts, repeat=2):
            N = KroneckerInvariants(regular=e)
            M = KroneckerInvariants(regular=b)
            _check_pair(runner, N, M, embeds_regular(N.regular, M.regular), closed_form_ranks(N, M))


def suite_pre_pri(runner: SuiteRunner) -> None:
    bound = runner.summary.bound
    for d, c in product(list(iter_partitions_up_to(bound)), repeat=2):
        if not d or not c:
            continue
        N, M = _pure("P", d), _pure("I", c)
        _check_pair(runner, N, M, embeds_pre_into_pri(d, c), None)


# === Block triangular ranks ===

def suite_blocktri(runner: SuiteRunner) -> None:
    s = runner.summary
    field = sampling_field(s.prime, MIN_SAMPLING_PRIME)
    sizes = range(0, s.bound + 1)
    for q in range(1, BLOCKTRI_MAX_BLOCKS + 1):
        for rows in product(sizes, repeat=q):
            for cols in product(sizes, repeat=q):
                formula = rank_block_triangular(rows, cols)
                sampled = max(
                    rank(sample_block_triangular(rows, cols, field, runner.rng))
                    for _ in range(s.trials)
                )
                runner.record(
                    formula == sampled,
                    f"rows={list(rows)} cols={list(cols)}: formula {formula}, sampled {sampled}",
                )


# === Extraction ===

def suite_extract(runner: SuiteRunner) -> None:
    """Round trip through canonical pencils, their transposes and random conjugates."""
    bound = runner.summary.bound
    rng = runner.rng
    for _ in range(EXTRACT_SAMPLES):
        inv = random_invariants(rng, bound, RATIONAL_POINT_POOL)
        pencil = canonical_pencil(inv)
        got = extract_invariants(pencil)
        dims = dimension_vector(inv)
        runner.record(dims.total <= bound, f"random invariants {inv} exceed total dimension {bound}")
        runner.record(got == inv, f"extract(canonical({inv})) = {got}")

        dual = extract_invariants(transpose_dual(pencil))
        runner.record(dual == dualize(inv), f"extract(transpose({inv})) = {dual}")
        runner.record(
            transpose_dual(pencil).dims == dims.swap(), f"transpose of canonical({inv}) has the wrong shape"
        )

        for _ in range(EXTRACT_CONJUGATES):
            P = random_invertible(pencil.rows, rng, CONJUGATION_ENTRY_RANGE)
            Q = random_invertible(pencil.cols, rng, CONJUGATION_ENTRY_RANGE)
            conj = extract_invariants(pencil.conjugate(P, Q))
            runner.record(conj == inv, f"extract(P·canonical({inv})·Q) = {conj}")


# === Order properties ===

def _pure_universe(bound: int) -> Dict[RepresentationType, List[KroneckerInvariants]]:
    partitions = [p for p in iter_partitions_up_to(bound) if p]
    regular = [r for r in iter_regular_parts(REGULAR_SUITE_POINTS[:2], bound) if r]
    return {
        RepresentationType.PREPROJECTIVE: [_pure("P", p) for p in partitions],
        RepresentationType.PREINJECTIVE: [_pure("I", p) for p in partitions],
        RepresentationType.REGULAR: [KroneckerInvariants(regular=r) for r in regular],
    }


def suite_order(runner: SuiteRunner) -> None:
    """Reflexivity, transitivity, dimension necessity and duality coherence."""
    s = runner.summary
    rng = runner.rng
    bound = s.bound

    for M in iter_invariants(DimensionVector(bound, bound), REGULAR_SUITE_POINTS[:2]):
        embeds, _ = runner.oracle(M, M)
        runner.record(embeds, f"reflexivity fails for {M}")

    universe = _pure_universe(bound)
    families = list(universe)
    for _ in range(TRANSITIVITY_TRIPLES):
        pool = universe[rng.choice(families)]
        N, L, M = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        verdicts = {
            (x, y): theorem_verdict(x, y)[0]
            for x, y in ((N, L), (L, M), (N, M))
        }
        if verdicts[(N, L)] and verdicts[(L, M)]:
            runner.record(verdicts[(N, M)], f"transitivity fails for {N} <= {L} <= {M}")
        for (x, y), embeds in verdicts.items():
            if embeds:
                runner.record(
                    dimension_vector(x).dominated_by(dimension_vector(y)),
                    f"{x} <= {y} but dimensions are not dominated",
                )

    mixed = list(iter_invariants(DimensionVector(min(bound, 4), min(bound, 4)), REGULAR_SUITE_POINTS[:1]))
    for _ in range(min(100, TRANSITIVITY_TRIPLES)):
        N, M = rng.choice(mixed), rng.choice(mixed)
        sub, _ = runner.oracle(N, M)
        factor = is_factor(
            transpose_dual(canonical_pencil(N)),
            transpose_dual(canonical_pencil(M)),
            mode=DecisionMode.GENERIC, trials=s.trials, prime=s.prime, seed=s.seed,
        )
        runner.record(sub == factor, f"{N} <= {M} is {sub} but the dual factor check says {factor}")


SUITES: Dict[str, Callable[[SuiteRunner], None]] = {
    "pp": suite_pp,
    "ii": suite_ii,
    "rr": suite_rr,
    "pre-pri": suite_pre_pri,
    "blocktri": suite_blocktri,
    "extract": suite_extract,
    "order": suite_order,
}


def run_suite(
    name: str,
    bound: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    use_cache: bool = True,
    cache_dir: Path = VERDICT_CACHE_DIR,
    reset_cache: bool = False,
) -> SuiteSummary:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if reset_cache:
        clear_cache(cache_dir)
    summary = SuiteSummary(
        suite=name,
        bound=bound if bound is not None else VERIFY_SUITES[name]["bound"],
        seed=seed,
        prime=prime,
        trials=trials,
    )
    logger.info("Running suite %s (bound %d): %s", name, summary.bound, VERIFY_SUITES[name]["description"])
    started = time.monotonic()
    SUITES[name](SuiteRunner(summary, use_cache, cache_dir))
    summary.elapsed_seconds = round(time.monotonic() - started, 3)
    logger.info(
        "Suite %s: %d instances, %d disagreements, %d cache hits, %.1fs",
        name, summary.instances, summary.disagreements, summary.cache_hits, summary.elapsed_seconds,
    )
    return summary
