"""Recover Kronecker invariants from an arbitrary pencil over Q.

Minimal indices come from kernel dimensions of block Toeplitz matrices:
polynomial solutions x(λ) of degree <= k of (λE + H) x(λ) = 0 form a space
of dimension κ_k, and the number of column minimal indices equal to k is the
second difference κ_k - 2κ_(k-1) + κ_(k-2). Row minimal indices are the
column indices of the transpose.

Elementary divisors come from the Smith form of λE + H (finite points) and
of μH + E (the point at infinity). Only spectra that split over Q are
accepted.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from kronecker.errors import InternalInconsistency, NonSplitSpectrum
from kronecker.invariants import (
    KroneckerInvariants,
    ProjectivePoint,
    dimension_vector,
    normalize,
)
from kronecker.linalg import ExactMatrix, coefficients, rank, smith_normal_form, vanishing_order
from kronecker.pencil import Pencil

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToeplitzStack:
    """H on the block diagonal, E on the block subdiagonal: ((k+2)m) x ((k+1)n)."""

    k: int
    matrix: ExactMatrix

    @classmethod
    def build(cls, p: Pencil, k: int) -> "ToeplitzStack":
        m, n = p.rows, p.cols

        def entry(i: int, j: int) -> Fraction:
            block_row, r = divmod(i, m)
            block_col, c = divmod(j, n)
            if block_row == block_col:
                return p.H[r, c]
            if block_row == block_col + 1:
                return p.E[r, c]
            return Fraction(0)

        return cls(k, ExactMatrix.from_function((k + 2) * m, (k + 1) * n, entry))

    @property
    def nullity(self) -> int:
        return self.matrix.cols - rank(self.matrix)


def normal_rank(p: Pencil) -> int:
    """Rank of λE + H over Q(λ).

    A nonzero r x r minor has degree at most r, so it cannot vanish at all of
    min(rows, cols) + 1 distinct points.
    """
    points = range(min(p.rows, p.cols) + 1)
    return max((rank(p.at(Fraction(x))) for x in points), default=0)


def column_minimal_indices(p: Pencil) -> List[int]:
    """Column minimal indices, ascending."""
    expected = p.cols - normal_rank(p)
    indices: List[int] = []
    kappa: Dict[int, int] = {-2: 0, -1: 0}
    k = 0
    while len(indices) < expected:
        if k > p.cols:
            raise InternalInconsistency(
                f"found {len(indices)} of {expected} column minimal indices by degree {p.cols}"
            )
        kappa[k] = ToeplitzStack.build(p, k).nullity
        count = kappa[k] - 2 * kappa[k - 1] + kappa[k - 2]
        logger.debug("Toeplitz degree %d: nullity %d, %d indices equal to %d", k, kappa[k], count, k)
        indices.extend([k] * count)
        k += 1
    return indices


def row_minimal_indices(p: Pencil) -> List[int]:
    return column_minimal_indices(p.transpose())


def _finite_divisors(p: Pencil) -> Dict[ProjectivePoint, List[int]]:
    divisors: Dict[ProjectivePoint, List[int]] = defaultdict(list)
    for factor in smith_normal_form(p.poly_matrix()):
        if factor.degree() < 1:
            continue
        _, irreducibles = factor.factor_list()
        for irreducible, multiplicity in irreducibles:
            if irreducible.degree() > 1:
                raise NonSplitSpectrum(str(irreducible.as_expr()))
            const, lead = coefficients(irreducible)
            # A regular block at p has determinant (λ + p)^b, so root ρ sits at -ρ.
            root = -const / lead
            divisors[ProjectivePoint.finite(-root)].append(multiplicity)
    return divisors


def _infinite_divisors(p: Pencil) -> List[int]:
    return [
        order
        for order in (vanishing_order(f) for f in smith_normal_form(p.reversed_poly_matrix()))
        if order > 0
    ]


def elementary_divisors(p: Pencil) -> Dict[ProjectivePoint, Tuple[int, ...]]:
    """Partition of elementary divisor degrees at each point of the spectrum."""
    divisors = _finite_divisors(p)
    infinite = _infinite_divisors(p)
    if infinite:
        divisors[ProjectivePoint.infinity()].extend(infinite)
    return {
        point: tuple(sorted(sizes, reverse=True))
        for point, sizes in sorted(divisors.items(), key=lambda item: item[0].sort_key())
    }


def extract_invariants(p: Pencil) -> KroneckerInvariants:
    """Kronecker invariants of ``p``; the inverse of canonical_pencil."""
    inv = normalize(
        preprojective=[eta + 1 for eta in row_minimal_indices(p)],
        regular=list(elementary_divisors(p).items()),
        preinjective=[eps + 1 for eps in column_minimal_indices(p)],
    )
    dims = dimension_vector(inv)
    if dims != p.dims:
        raise InternalInconsistency(
            f"invariants {inv} have dimensions ({dims.dim1}, {dims.dim2}) "
            f"but the pencil is {p.rows}x{p.cols}"
        )
    logger.debug("extracted %s from a %dx%d pencil", inv, p.rows, p.cols)
    return inv


def strictly_equivalent(p1: Pencil, p2: Pencil) -> bool:
    if p1.E.shape != p2.E.shape:
        return False
    return extract_invariants(p1) == extract_invariants(p2)
