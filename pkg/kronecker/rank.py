"""Generic ranks of homomorphisms: closed forms and a sampled oracle.

The closed forms cover the three same-family cases (preprojective,
preinjective, regular) plus generic block upper triangular matrices. The
oracle specializes a hom basis at random points of a large prime field; by
Schwartz-Zippel a trial under-estimates the generic rank r with probability
at most r / p.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from kronecker.config import DEFAULT_PRIME, DEFAULT_TRIALS, MIN_SAMPLING_PRIME
from kronecker.errors import InvalidPart, LengthMismatch
from kronecker.hom import HomBasis
from kronecker.invariants import (
    KroneckerInvariants,
    ProjectivePoint,
    RegularPart,
    RepresentationType,
    require_descending,
)
from kronecker.linalg import ExactMatrix, Field, PrimeField, rank, sampling_field
from kronecker.models import ComponentIndex, RankReport

logger = logging.getLogger(__name__)


# === Step profile ===

@dataclass(frozen=True)
class StepProfile:
    """Staircase of zero blocks in a preprojective generic homomorphism.

    ``r[l]`` counts the leading columns that are zero in block row group l;
    ``s[l]`` is the last row of that group. ``r`` ends at the length of the
    column list, so ``t = len(r)`` and ``len(s) = t - 1``.
    """

    r: Tuple[int, ...]
    s: Tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.r)


def _part(parts: Sequence[int], index: int) -> int:
    """1-based lookup where indices outside the list read as 0."""
    return parts[index - 1] if 1 <= index <= len(parts) else 0


def step_profile(a: Sequence[int], d: Sequence[int]) -> StepProfile:
    """Profile of the generic homomorphism from sizes ``d`` into sizes ``a``.

    r_l is the largest j with d_j > a_{s_(l-1) + 1} (0 if none), and s_l is the
    largest i with d_(r_l + 1) <= a_i. The walk stops once r_l reaches len(d).
    """
    require_descending(a, "a")
    require_descending(d, "d")
    n = len(d)
    r: List[int] = []
    s: List[int] = []
    prev_s = 0
    while True:
        threshold = _part(a, prev_s + 1)
        r_l = max((j for j in range(1, n + 1) if d[j - 1] > threshold), default=0)
        r.append(r_l)
        if r_l == n:
            break
        head = d[r_l]
        s_l = max((i for i in range(1, len(a) + 1) if head <= a[i - 1]), default=0)
        s.append(s_l)
        prev_s = s_l
    profile = StepProfile(r=tuple(r), s=tuple(s))
    logger.debug("step profile a=%s d=%s: r=%s s=%s", list(a), list(d), profile.r, profile.s)
    return profile


def dual_step_profile(c: Sequence[int], f: Sequence[int]) -> StepProfile:
    """Profile for preinjective sizes ``f`` into ``c`` (the roles of the lists swap)."""
    return step_profile(f, c)


# === Closed forms ===

def rank_block_triangular(row_sizes: Sequence[int], col_sizes: Sequence[int]) -> int:
    """Generic rank of a block upper triangular matrix with the given block sizes."""
    if len(row_sizes) != len(col_sizes):
        raise LengthMismatch(f"{len(row_sizes)} row blocks but {len(col_sizes)} column blocks")
    if any(size < 0 for size in list(row_sizes) + list(col_sizes)):
        raise InvalidPart("block sizes must be nonnegative")
    q = len(row_sizes)
    return min(sum(row_sizes[:i]) + sum(col_sizes[i:]) for i in range(q + 1))


def _shift(component: int) -> int:
    if component not in (1, 2):
        raise ValueError(f"component must be 1 or 2, got {component}")
    return 1 if component == 1 else 0


def rank_pp(a: Sequence[int], d: Sequence[int], component: int) -> int:
    """Generic rank of component 1 or 2 of the hom from Q-sizes ``d`` into ``a``.

    Both components use the profile of (a, d); component 1 measures every
    block one smaller.
    """
    shift = _shift(component)
    profile = step_profile(a, d)
    s = (0,) + profile.s
    return min(
        sum(x - shift for x in a[: s[i]]) + sum(x - shift for x in d[profile.r[i]:])
        for i in range(profile.t)
    )


def rank_ii(c: Sequence[int], f: Sequence[int], component: int) -> int:
    """Generic rank of component 1 or 2 of the hom from J-sizes ``f`` into ``c``.

    Transposition turns this into the preprojective case with the lists and
    the components swapped.
    """
    _shift(component)
    return rank_pp(f, c, 3 - component)


def _as_regular_map(part: Union[RegularPart, Mapping]) -> Dict[ProjectivePoint, Tuple[int, ...]]:
    return dict(part.items()) if isinstance(part, Mapping) else dict(part)


def rank_rr(M_regular: Union[RegularPart, Mapping], N_regular: Union[RegularPart, Mapping]) -> int:
    """Generic rank (either component) of the hom between two regular parts."""
    target = _as_regular_map(M_regular)
    source = _as_regular_map(N_regular)
    total = 0
    for point, sizes in source.items():
        require_descending(sizes, f"N[{point}]")
        other = target.get(point, ())
        require_descending(other, f"M[{point}]")
        total += sum(min(b, e) for b, e in zip(other, sizes))
    return total


def block_profile(a: Sequence[int], d: Sequence[int], component: int) -> Tuple[List[int], List[int]]:
    """Row and column sizes of the nonzero staircase blocks of the PP hom.

    Feeding them to rank_block_triangular reproduces rank_pp.
    """
    shift = _shift(component)
    profile = step_profile(a, d)
    s = (0,) + profile.s
    rows = [sum(x - shift for x in a[s[l - 1]: s[l]]) for l in range(1, profile.t)]
    cols = [sum(x - shift for x in d[profile.r[l - 1]: profile.r[l]]) for l in range(1, profile.t)]
    return rows, cols


# === Sampling ===

def sample_block_triangular(
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    field: Field,
    rng: random.Random,
) -> ExactMatrix:
    """Random specialization of a generic block upper triangular matrix."""
    if len(row_sizes) != len(col_sizes):
        raise LengthMismatch(f"{len(row_sizes)} row blocks but {len(col_sizes)} column blocks")
    row_block = [i for i, size in enumerate(row_sizes) for _ in range(size)]
    col_block = [j for j, size in enumerate(col_sizes) for _ in range(size)]
    return ExactMatrix.from_function(
        len(row_block), len(col_block),
        lambda r, c: field.random(rng) if row_block[r] <= col_block[c] else field.zero,
        field,
    )


Sparse = List[Tuple[int, int, int]]


def _sparse_reduced(matrices: Sequence[ExactMatrix], field: PrimeField) -> List[Sparse]:
    return [
        [(i, j, field.coerce(v)) for i, row in enumerate(m.entries) for j, v in enumerate(row) if v]
        for m in matrices
    ]


def _combine(terms: Sequence[Sparse], coeffs: Sequence[int], shape: Tuple[int, int], field: PrimeField) -> ExactMatrix:
    rows, cols = shape
    data = [[0] * cols for _ in range(rows)]
    for coeff, sparse in zip(coeffs, terms):
        for i, j, v in sparse:
            data[i][j] += coeff * v
    p = field.modulus
    return ExactMatrix(rows, cols, tuple(tuple(x % p for x in row) for row in data), field)


def random_specializations(
    basis: HomBasis,
    trials: int,
    field: PrimeField,
    rng: random.Random,
) -> Iterator[Tuple[ExactMatrix, ExactMatrix]]:
    """Yield ``trials`` random members (φ1, φ2) of the hom space over ``field``."""
    reduced = [_sparse_reduced(basis.component(index), field) for index in (1, 2)]
    for _ in range(trials):
        coeffs = [field.random(rng) for _ in range(basis.dimension)]
        yield (
            _combine(reduced[0], coeffs, basis.shape(1), field),
            _combine(reduced[1], coeffs, basis.shape(2), field),
        )


def sampled_generic_rank(
    basis: HomBasis,
    component: int,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    rng: Optional[random.Random] = None,
) -> int:
    """Maximum rank of component ``component`` over ``trials`` random specializations."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    field = sampling_field(prime, MIN_SAMPLING_PRIME)
    rng = rng or random.Random(0)
    best = 0
    for phi1, phi2 in random_specializations(basis, trials, field, rng):
        best = max(best, rank(phi1 if component == 1 else phi2))
    logger.debug("sampled rank of component %d: %d over %d trials", component, best, trials)
    return best


def error_bound(rows: int, cols: int, trials: int, prime: int) -> float:
    """Chance that every trial under-estimates a generic rank of this shape."""
    return (min(rows, cols) / prime) ** trials


def rank_report(
    component: int,
    shape: Tuple[int, int],
    sampled: int,
    trials: int,
    prime: int,
    formula: Optional[int] = None,
) -> RankReport:
    rows, cols = shape
    return RankReport(
        component=ComponentIndex(component),
        columns=cols,
        formula_rank=formula,
        sampled_rank=sampled,
        trials=trials,
        prime=prime,
        agreement=formula is None or formula == sampled,
        full_column_rank=sampled == cols,
        error_bound=error_bound(rows, cols, trials, prime),
    )


def closed_form_ranks(N: KroneckerInvariants, M: KroneckerInvariants) -> Optional[Tuple[int, int]]:
    """Formula ranks of both components when N and M are of one family, else None."""
    T = RepresentationType
    kinds = (N.kind, M.kind)
    if T.ZERO in (N.kind, M.kind):
        return 0, 0
    if kinds == (T.PREPROJECTIVE, T.PREPROJECTIVE):
        return rank_pp(M.preprojective, N.preprojective, 1), rank_pp(M.preprojective, N.preprojective, 2)
    if kinds == (T.PREINJECTIVE, T.PREINJECTIVE):
        return rank_ii(M.preinjective, N.preinjective, 1), rank_ii(M.preinjective, N.preinjective, 2)
    if kinds == (T.REGULAR, T.REGULAR):
        value = rank_rr(M.regular, N.regular)
        return value, value
    return None
