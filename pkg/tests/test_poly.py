"""Unit tests for polynomial helpers and the Smith normal form over Q[λ].

Run with: PYTHONPATH=. python3 -m pytest tests/test_poly.py -v
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from itertools import combinations

from sympy import Poly

from kronecker.linalg import (
    ExactMatrix,
    PolyMatrix,
    coefficients,
    make_poly,
    smith_normal_form,
    vanishing_order,
)

LAM = make_poly([0, 1])
ONE = make_poly([1])
ZERO = make_poly([])


def _coeffs(factors) -> list[list[Fraction]]:
    return [coefficients(f) for f in factors]


def _random_poly_matrix(rng: random.Random) -> PolyMatrix:
    rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    return PolyMatrix.from_rows([
        [make_poly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]) for _ in range(cols)]
        for _ in range(rows)
    ])


def _det(rows: list[list[Poly]]) -> Poly:
    """Laplace expansion along the first row."""
    if not rows:
        return ONE
    total = ZERO
    for j, entry in enumerate(rows[0]):
        term = entry * _det([r[:j] + r[j + 1:] for r in rows[1:]])
        total = total + term if j % 2 == 0 else total - term
    return total


class TestPolyHelpers:
    """Test coefficient conversion and vanishing order."""

    def test_make_poly_trims_trailing_zeros(self) -> None:
        assert coefficients(make_poly([1, 2, 0, 0])) == [1, 2]

    def test_zero_polynomial(self) -> None:
        assert coefficients(ZERO) == []

    def test_fraction_coefficients(self) -> None:
        assert coefficients(make_poly(["1/2", "-3"])) == [Fraction(1, 2), Fraction(-3)]

    def test_vanishing_order(self) -> None:
        assert vanishing_order(make_poly([0, 0, 5, 1])) == 2
        assert vanishing_order(make_poly([1, 1])) == 0


class TestPolyMatrix:
    """Test linear polynomial matrices."""

    def test_linear_and_evaluate(self) -> None:
        E = ExactMatrix.from_rows([[1, 0], [0, 1]])
        H = ExactMatrix.from_rows([[0, 1], [0, 2]])
        pm = PolyMatrix.linear(E, H)
        assert pm.evaluate(Fraction(3)).to_lists() == [[3, 1], [0, 5]]


class TestSmithNormalForm:
    """Test invariant factors of small polynomial matrices."""

    def test_diagonal(self) -> None:
        pm = PolyMatrix.from_rows([[LAM, ZERO], [ZERO, LAM]])
        assert _coeffs(smith_normal_form(pm)) == [[0, 1], [0, 1]]

    def test_diagonal_with_square(self) -> None:
        pm = PolyMatrix.from_rows([[LAM, ZERO], [ZERO, LAM * LAM]])
        assert _coeffs(smith_normal_form(pm)) == [[0, 1], [0, 0, 1]]

    def test_jordan_block(self) -> None:
        pm = PolyMatrix.from_rows([[LAM, ONE], [ZERO, LAM]])
        assert _coeffs(smith_normal_form(pm)) == [[1], [0, 0, 1]]

    def test_non_divisible_diagonal(self) -> None:
        # diag(λ, λ + 1) has invariant factors 1 and λ(λ + 1)
        pm = PolyMatrix.from_rows([[LAM, ZERO], [ZERO, LAM + ONE]])
        assert _coeffs(smith_normal_form(pm)) == [[1], [0, 1, 1]]

    def test_rank_deficient(self) -> None:
        pm = PolyMatrix.from_rows([[LAM, LAM], [LAM, LAM]])
        assert _coeffs(smith_normal_form(pm)) == [[0, 1]]

    def test_zero_matrix(self) -> None:
        pm = PolyMatrix.from_rows([[ZERO, ZERO]])
        assert smith_normal_form(pm) == []

    def test_factors_are_monic(self) -> None:
        pm = PolyMatrix.from_rows([[make_poly([2, 4])]])
        assert _coeffs(smith_normal_form(pm)) == [[Fraction(1, 2), 1]]

    def test_divisibility_chain_on_random_matrices(self, rng: random.Random) -> None:
        for _ in range(12):
            factors = smith_normal_form(_random_poly_matrix(rng))
            for lower, higher in zip(factors, factors[1:]):
                assert higher.rem(lower).is_zero

    def test_products_match_determinantal_divisors(self, rng: random.Random) -> None:
        for _ in range(12):
            pm = _random_poly_matrix(rng)
            factors = smith_normal_form(pm)
            for k in range(1, min(pm.rows, pm.cols) + 1):
                minors = [
                    m for m in (
                        _det([[pm.entries[i][j] for j in cols] for i in rows])
                        for rows in combinations(range(pm.rows), k)
                        for cols in combinations(range(pm.cols), k)
                    )
                    if not m.is_zero
                ]
                if not minors:
                    assert len(factors) < k
                    continue
                divisor = reduce(lambda x, y: x.gcd(y), minors).monic()
                assert len(factors) >= k
                assert reduce(lambda x, y: x * y, factors[:k]) == divisor
