"""Unit tests for invariant extraction from arbitrary pencils.

Run with: PYTHONPATH=. python3 -m pytest tests/test_extract.py -v
"""
from __future__ import annotations

import random

import pytest

from kronecker.errors import NonSplitSpectrum
from kronecker.extract import (
    ToeplitzStack,
    column_minimal_indices,
    elementary_divisors,
    extract_invariants,
    normal_rank,
    row_minimal_indices,
    strictly_equivalent,
)
from kronecker.invariants import KroneckerInvariants, ProjectivePoint, dualize, normalize, random_invariants
from kronecker.linalg import ExactMatrix, random_invertible
from kronecker.pencil import (
    IndecomposableKind,
    Pencil,
    canonical_pencil,
    direct_sum,
    indecomposable_pencil,
    transpose_dual,
)

K = IndecomposableKind
ZERO_PT = ProjectivePoint.finite(0)
INF = ProjectivePoint.infinity()


def _pencil(E: list, H: list) -> Pencil:
    return Pencil(ExactMatrix.from_rows(E), ExactMatrix.from_rows(H))


class TestToeplitzStack:
    """Test the block Toeplitz matrices."""

    def test_shape(self) -> None:
        stack = ToeplitzStack.build(Pencil.zero(2, 3), 1)
        assert stack.matrix.shape == (6, 6)

    def test_j2_kernel_appears_at_degree_one(self) -> None:
        p = indecomposable_pencil(K.J, 2)
        assert ToeplitzStack.build(p, 0).nullity == 0
        assert ToeplitzStack.build(p, 1).nullity == 1


class TestNormalRank:
    """Test rank over Q(λ)."""

    def test_j2(self) -> None:
        assert normal_rank(indecomposable_pencil(K.J, 2)) == 1

    def test_zero(self) -> None:
        assert normal_rank(Pencil.zero(1, 2)) == 0

    def test_regular_block(self) -> None:
        assert normal_rank(indecomposable_pencil(K.R, 2, ZERO_PT)) == 2

    def test_empty(self) -> None:
        assert normal_rank(Pencil.zero(0, 0)) == 0


class TestMinimalIndices:
    """Test column and row minimal indices."""

    def test_j2_column_index(self) -> None:
        assert column_minimal_indices(indecomposable_pencil(K.J, 2)) == [1]

    def test_zero_one_by_one(self) -> None:
        assert column_minimal_indices(Pencil.zero(1, 1)) == [0]

    def test_regular_has_none(self) -> None:
        assert column_minimal_indices(indecomposable_pencil(K.R, 1, ZERO_PT)) == []

    def test_q2_row_index(self) -> None:
        assert row_minimal_indices(indecomposable_pencil(K.Q, 2)) == [1]

    def test_q1_row_index(self) -> None:
        assert row_minimal_indices(indecomposable_pencil(K.Q, 1)) == [0]

    def test_infinite_block_has_none(self) -> None:
        assert row_minimal_indices(indecomposable_pencil(K.R, 1, INF)) == []

    def test_several_indices(self) -> None:
        p = canonical_pencil(normalize(preinjective=[4, 2, 1]))
        assert column_minimal_indices(p) == [0, 1, 3]

    def test_counts_match_normal_rank(self, rng: random.Random) -> None:
        for _ in range(15):
            inv = random_invariants(rng, 9, ["0", "1", "inf"])
            p = canonical_pencil(inv)
            p = p.conjugate(random_invertible(p.rows, rng), random_invertible(p.cols, rng))
            r = normal_rank(p)
            assert len(column_minimal_indices(p)) == p.cols - r
            assert len(row_minimal_indices(p)) == p.rows - r


class TestElementaryDivisors:
    """Test the regular part of the spectrum."""

    def test_jordan_block_at_zero(self) -> None:
        assert elementary_divisors(indecomposable_pencil(K.R, 2, ZERO_PT)) == {ZERO_PT: (2,)}

    def test_infinite_block(self) -> None:
        assert elementary_divisors(indecomposable_pencil(K.R, 1, INF)) == {INF: (1,)}

    def test_rational_point(self) -> None:
        point = ProjectivePoint.parse("-1/2")
        assert elementary_divisors(indecomposable_pencil(K.R, 3, point)) == {point: (3,)}

    def test_non_split_spectrum(self) -> None:
        p = _pencil([[1, 0], [0, 1]], [[0, -1], [1, 0]])
        with pytest.raises(NonSplitSpectrum) as excinfo:
            elementary_divisors(p)
        assert "lam**2 + 1" in excinfo.value.factor

    def test_several_points(self) -> None:
        inv = normalize(regular=[("0", [2, 1]), ("1", [1]), ("inf", [2])])
        divisors = elementary_divisors(canonical_pencil(inv))
        assert divisors == dict(inv.regular)
        assert list(divisors) == list(inv.points)


class TestExtractInvariants:
    """Test the full extraction."""

    def test_round_trip(self) -> None:
        inv = normalize(preprojective=[2], regular=[("0", [1])], preinjective=[1])
        assert extract_invariants(canonical_pencil(inv)) == inv

    def test_zero_one_by_two(self) -> None:
        assert extract_invariants(Pencil.zero(1, 2)) == normalize(preprojective=[1], preinjective=[1, 1])

    def test_two_points(self) -> None:
        p = _pencil([[1, 0], [0, 1]], [[0, 0], [0, 1]])
        assert extract_invariants(p) == normalize(regular=[("0", [1]), ("1", [1])])

    def test_empty(self) -> None:
        assert extract_invariants(Pencil.zero(0, 0)) == KroneckerInvariants()

    def test_transpose_dual(self) -> None:
        q2 = indecomposable_pencil(K.Q, 2)
        assert extract_invariants(transpose_dual(q2)) == normalize(preinjective=[2])

    def test_transpose_of_infinite_block(self) -> None:
        r = indecomposable_pencil(K.R, 1, INF)
        assert extract_invariants(transpose_dual(r)) == normalize(regular=[("inf", [1])])

    def test_random_round_trips(self) -> None:
        rng = random.Random(21)
        for _ in range(25):
            inv = random_invariants(rng, 10, ["0", "1", "-1", "1/2", "inf"])
            p = canonical_pencil(inv)
            assert extract_invariants(p) == inv
            assert extract_invariants(transpose_dual(p)) == dualize(inv)

    def test_conjugation_invariance(self) -> None:
        rng = random.Random(22)
        for _ in range(10):
            inv = random_invariants(rng, 8, ["0", "inf", "1/2"])
            p = canonical_pencil(inv)
            P = random_invertible(p.rows, rng)
            Q = random_invertible(p.cols, rng)
            assert extract_invariants(p.conjugate(P, Q)) == inv


class TestStrictlyEquivalent:
    """Test strict equivalence of pencils."""

    def test_reflexive(self) -> None:
        p = canonical_pencil(normalize(preprojective=[3], preinjective=[2]))
        assert strictly_equivalent(p, p)

    def test_different_shapes(self) -> None:
        p = indecomposable_pencil(K.R, 1, ZERO_PT)
        assert not strictly_equivalent(p, direct_sum(p, indecomposable_pencil(K.Q, 1)))

    def test_conjugate(self, rng: random.Random) -> None:
        p = canonical_pencil(normalize(preprojective=[2], regular=[("1", [2])], preinjective=[3]))
        q = p.conjugate(random_invertible(p.rows, rng), random_invertible(p.cols, rng))
        assert strictly_equivalent(p, q)

    def test_same_shape_different_points(self) -> None:
        p = indecomposable_pencil(K.R, 1, ZERO_PT)
        q = indecomposable_pencil(K.R, 1, ProjectivePoint.finite(1))
        assert not strictly_equivalent(p, q)
