"""Unit tests for embedding criteria, the randomized oracle and dispatch.

Run with: PYTHONPATH=. python3 -m pytest tests/test_criteria.py -v
"""
from __future__ import annotations

import random
from itertools import product

import pytest

from kronecker.criteria import (
    decide,
    embeds_generic,
    embeds_pre_into_pri,
    embeds_preinjective,
    embeds_preprojective,
    embeds_regular,
    hom_vanishes_on_a_summand,
    is_factor,
    oracle_verdict,
    search_subfactor,
    theorem_verdict,
)
from kronecker.errors import CriterionDisagreement, CriterionUnavailable, NotSorted
from kronecker.invariants import (
    DimensionVector,
    KroneckerInvariants,
    dimension_vector,
    from_document,
    iter_invariants,
    iter_partitions_up_to,
    normalize,
)
from kronecker.linalg import random_invertible
from kronecker.models import DecisionMode, Provenance, Relation
from kronecker.pencil import canonical_pencil, transpose_dual


def _pre(*parts: int) -> KroneckerInvariants:
    return normalize(preprojective=parts)


def _pri(*parts: int) -> KroneckerInvariants:
    return normalize(preinjective=parts)


def _reg(**points: list) -> KroneckerInvariants:
    names = {"zero": "0", "one": "1", "inf": "inf"}
    return normalize(regular=[(names[k], v) for k, v in points.items()])


# === Closed-form criteria ===

class TestEmbedsPreprojective:
    """Test the preprojective criterion."""

    def test_smaller_block_embeds(self) -> None:
        assert embeds_preprojective([2], [3])

    def test_dimension_too_large(self) -> None:
        assert not embeds_preprojective([2, 2], [3])

    def test_block_too_large(self) -> None:
        assert not embeds_preprojective([3], [2, 2])

    def test_empty_source(self) -> None:
        assert embeds_preprojective([], [2])

    def test_requires_descending(self) -> None:
        with pytest.raises(NotSorted):
            embeds_preprojective([1, 2], [3])

    def test_agrees_with_oracle(self) -> None:
        for a, d in product(list(iter_partitions_up_to(4)), repeat=2):
            embeds, _ = oracle_verdict(_pre(*d), _pre(*a))
            assert embeds_preprojective(d, a) == embeds, (a, d)


class TestEmbedsPreinjective:
    """Test the preinjective criterion."""

    def test_larger_source_needed(self) -> None:
        assert not embeds_preinjective([1], [2])

    def test_shifted_sum_too_large(self) -> None:
        assert not embeds_preinjective([2], [1, 1])

    def test_no_maps_from_smaller_block(self) -> None:
        # Hom(J_2, J_3) vanishes, so J_2 is not a subrepresentation of J_3
        assert not embeds_preinjective([2], [3])

    def test_equal_block_embeds(self) -> None:
        assert embeds_preinjective([2], [2, 2])

    def test_empty_source(self) -> None:
        assert embeds_preinjective([], [1])

    def test_agrees_with_oracle(self) -> None:
        for c, f in product(list(iter_partitions_up_to(4)), repeat=2):
            embeds, _ = oracle_verdict(_pri(*f), _pri(*c))
            assert embeds_preinjective(f, c) == embeds, (c, f)


class TestEmbedsRegular:
    """Test pointwise domination of regular parts."""

    def test_smaller_block(self) -> None:
        assert embeds_regular(_reg(zero=[1]).regular, _reg(zero=[2]).regular)

    def test_too_many_blocks(self) -> None:
        assert not embeds_regular(_reg(zero=[1, 1]).regular, _reg(zero=[1]).regular)

    def test_missing_point(self) -> None:
        assert not embeds_regular(_reg(one=[1]).regular, _reg(zero=[2]).regular)

    def test_several_points(self) -> None:
        N = _reg(zero=[2, 1], inf=[1])
        M = _reg(zero=[3, 1], inf=[2], one=[1])
        assert embeds_regular(N.regular, M.regular)


class TestEmbedsPreIntoPri:
    """Test preprojective into preinjective."""

    def test_fits(self) -> None:
        assert embeds_pre_into_pri([1], [2])

    def test_does_not_fit(self) -> None:
        assert not embeds_pre_into_pri([2], [2])

    def test_two_sources(self) -> None:
        assert embeds_pre_into_pri([1, 1], [3])


class TestTheoremVerdict:
    """Test closed-form dispatch and provenance."""

    def test_zero_source_is_trivial(self) -> None:
        assert theorem_verdict(KroneckerInvariants(), _reg(zero=[1])) == (True, Provenance.TRIVIAL)

    def test_preprojective_pair(self) -> None:
        assert theorem_verdict(_pre(2), _pre(3)) == (True, Provenance.PREPROJECTIVE)

    def test_preinjective_pair(self) -> None:
        assert theorem_verdict(_pri(2), _pri(2, 2)) == (True, Provenance.PREINJECTIVE)

    def test_regular_pair(self) -> None:
        assert theorem_verdict(_reg(zero=[1]), _reg(zero=[2])) == (True, Provenance.REGULAR)

    def test_pre_into_pri(self) -> None:
        assert theorem_verdict(_pre(1, 1), _pri(3)) == (True, Provenance.PRE_INTO_PRI)

    def test_cross_family_pairs_are_uncovered(self) -> None:
        assert theorem_verdict(_reg(zero=[1]), _pre(2)) is None
        assert theorem_verdict(_pri(1), _reg(zero=[3])) is None
        assert theorem_verdict(_pre(1), KroneckerInvariants()) is None

    def test_vanishing_hom_is_not_a_criterion(self) -> None:
        N = normalize(preprojective=[2], regular=[("0", [1])])
        assert hom_vanishes_on_a_summand(N, _pre(3))
        assert theorem_verdict(N, _pre(3)) is None

    def test_uncovered_mix(self) -> None:
        N = normalize(preprojective=[2], regular=[("0", [1])])
        M = normalize(preprojective=[3], regular=[("0", [2])])
        assert theorem_verdict(N, M) is None


class TestHomVanishing:
    """Test the structural prefilter used before sampling."""

    def test_preinjective_without_target(self) -> None:
        assert hom_vanishes_on_a_summand(_pri(1), _reg(zero=[3]))

    def test_regular_point_missing(self) -> None:
        assert hom_vanishes_on_a_summand(_reg(one=[1]), _reg(zero=[2]))

    def test_preinjective_target_absorbs_regular(self) -> None:
        assert not hom_vanishes_on_a_summand(_reg(one=[1]), _pri(3))

    def test_nonzero_into_zero(self) -> None:
        assert hom_vanishes_on_a_summand(_pre(1), KroneckerInvariants())

    def test_preprojective_reaches_everything(self) -> None:
        assert not hom_vanishes_on_a_summand(_pre(2), _reg(zero=[1]))


# === Randomized oracle ===

class TestEmbedsGeneric:
    """Test the randomized mono test on pencils."""

    def test_identity_embedding(self) -> None:
        p = canonical_pencil(normalize(preprojective=[2], regular=[("0", [1])], preinjective=[1]))
        embeds, report = embeds_generic(p, p)
        assert embeds
        assert report.successful_trial == 1
        assert report.component1.full_column_rank and report.component2.full_column_rank

    def test_no_embedding_reports_ranks(self) -> None:
        N, M = canonical_pencil(_pre(2, 2)), canonical_pencil(_pre(3))
        embeds, report = embeds_generic(N, M, trials=2)
        assert not embeds
        assert report.successful_trial is None
        assert report.component2.sampled_rank == 3
        assert report.component2.columns == 4
        assert report.component2.error_bound < 1e-30

    def test_conjugated_pencils(self, rng: random.Random) -> None:
        inv = normalize(preprojective=[2], regular=[("1", [1])])
        p = canonical_pencil(inv)
        q = p.conjugate(random_invertible(p.rows, rng), random_invertible(p.cols, rng))
        embeds, _ = embeds_generic(p, q)
        assert embeds

    def test_zero_trials_rejected(self) -> None:
        p = canonical_pencil(_pre(2))
        with pytest.raises(ValueError):
            embeds_generic(p, p, trials=0)

    def test_formula_ranks_echoed(self) -> None:
        N, M = _pre(2), _pre(3)
        _, report = oracle_verdict(N, M)
        assert report.component1.formula_rank == 1
        assert report.component2.formula_rank == 2
        assert report.component1.agreement and report.component2.agreement


# === Dispatch ===

class TestDecide:
    """Test mode handling, provenance and disagreement."""

    def test_both_mode_pure_pair(self) -> None:
        verdict = decide(_pre(2), _pre(3))
        assert verdict.embeds
        assert verdict.provenance is Provenance.PREPROJECTIVE
        assert verdict.report is not None

    def test_theorem_mode_has_no_report(self) -> None:
        verdict = decide(_pre(2, 2), _pre(3), mode=DecisionMode.THEOREM)
        assert not verdict.embeds
        assert verdict.report is None

    def test_theorem_mode_unavailable(self) -> None:
        N = normalize(preprojective=[2], regular=[("0", [1])])
        M = normalize(preprojective=[3], regular=[("0", [2])])
        with pytest.raises(CriterionUnavailable):
            decide(N, M, mode=DecisionMode.THEOREM)

    def test_generic_mode(self) -> None:
        verdict = decide(_pre(2, 2), _pre(3), mode=DecisionMode.GENERIC)
        assert not verdict.embeds
        assert verdict.provenance is Provenance.ORACLE
        assert verdict.report is not None

    def test_generic_mode_prefilter(self) -> None:
        verdict = decide(_reg(zero=[1]), _pre(2), mode=DecisionMode.GENERIC)
        assert not verdict.embeds
        assert verdict.provenance is Provenance.HOM_VANISHING
        assert verdict.report is None

    def test_theorem_mode_ignores_vanishing_hom(self) -> None:
        N = normalize(preprojective=[2], regular=[("0", [1])])
        with pytest.raises(CriterionUnavailable):
            decide(N, _pre(3), mode=DecisionMode.THEOREM)
        with pytest.raises(CriterionUnavailable):
            decide(_reg(zero=[1]), _pre(2), mode=DecisionMode.THEOREM)

    def test_both_mode_falls_back_to_oracle(self) -> None:
        verdict = decide(_pre(2), _reg(zero=[1], one=[1]))
        assert verdict.embeds
        assert verdict.provenance is Provenance.GENERIC_ONLY

    def test_hom_vanishing_agrees_with_oracle(self) -> None:
        verdict = decide(_reg(zero=[1]), _pre(2))
        assert not verdict.embeds
        assert verdict.provenance is Provenance.HOM_VANISHING
        assert not oracle_verdict(_reg(zero=[1]), _pre(2))[0]

    def test_reflexive_on_mixed(self) -> None:
        M = normalize(preprojective=[2, 1], regular=[("inf", [2])], preinjective=[3])
        assert decide(M, M).embeds

    def test_pencil_inputs(self) -> None:
        N = canonical_pencil(_pre(2))
        M = canonical_pencil(_pre(3))
        assert decide(N, M).embeds

    def test_disagreement_raises(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(
            "kronecker.criteria.theorem_verdict",
            lambda N, M: (False, Provenance.PREPROJECTIVE),
        )
        with pytest.raises(CriterionDisagreement):
            decide(_pre(2), _pre(3))

    def test_dimension_necessity(self) -> None:
        for d, a in product(list(iter_partitions_up_to(3)), repeat=2):
            N, M = _pre(*d), _pre(*a)
            if decide(N, M, mode=DecisionMode.THEOREM).embeds:
                assert dimension_vector(N).dominated_by(dimension_vector(M))


class TestFactor:
    """Test factor questions, answered on the dual side."""

    def test_relation_recorded(self) -> None:
        verdict = decide(_reg(zero=[1]), _reg(zero=[2]), relation=Relation.FACTOR)
        assert verdict.relation is Relation.FACTOR
        assert verdict.embeds

    def test_regular_quotient(self) -> None:
        assert is_factor(_reg(zero=[1]), _reg(zero=[2]))

    def test_simple_projective_is_not_a_factor(self) -> None:
        assert not is_factor(_pre(1), _pre(2))

    def test_preinjective_quotient(self) -> None:
        # J_1 is a factor of J_2
        assert is_factor(_pri(1), _pri(2))

    def test_pencil_inputs(self) -> None:
        assert is_factor(canonical_pencil(_pri(1)), canonical_pencil(_pri(2)))


class TestOrderProperties:
    """Test transitivity and duality coherence of the embedding order."""

    @pytest.mark.parametrize("family", ["P", "I", "R"])
    def test_transitive_within_a_family(self, family: str) -> None:
        partitions = [p for p in iter_partitions_up_to(3) if p]
        build = {
            "P": lambda p: _pre(*p),
            "I": lambda p: _pri(*p),
            "R": lambda p: _reg(zero=list(p)),
        }[family]
        pool = [build(p) for p in partitions]
        for N, L, M in product(pool, repeat=3):
            below = decide(N, L, mode=DecisionMode.THEOREM).embeds
            above = decide(L, M, mode=DecisionMode.THEOREM).embeds
            if below and above:
                assert decide(N, M, mode=DecisionMode.THEOREM).embeds, (N, L, M)

    def test_duality_coherence(self, rng: random.Random) -> None:
        universe = list(iter_invariants(DimensionVector(2, 2), ["0"]))
        for _ in range(40):
            N, M = rng.choice(universe), rng.choice(universe)
            sub = oracle_verdict(N, M)[0]
            factor = is_factor(transpose_dual(canonical_pencil(N)), transpose_dual(canonical_pencil(M)))
            assert sub == factor, (N, M)


class TestSearchSubfactor:
    """Test the bounded subfactor search."""

    def test_finds_witness(self) -> None:
        N, M = _reg(zero=[1]), _reg(zero=[2])
        result = search_subfactor(N, M, max_dim=2)
        assert result.found and result.heuristic
        assert result.witness is not None
        L = from_document(result.witness)
        assert decide(L, M, mode=DecisionMode.GENERIC).embeds
        assert is_factor(N, L)

    def test_no_candidates_when_too_small(self) -> None:
        result = search_subfactor(_pre(2), _pre(1), max_dim=3)
        assert not result.found
        assert result.candidates_checked == 0
        assert result.witness is None
