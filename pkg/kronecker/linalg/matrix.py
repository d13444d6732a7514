"""Dense exact matrices with rank, nullspace and reduction modulo p.

Entries are stored row-major as a tuple of row tuples. Zero-row and
zero-column matrices are legal values and flow through every operation.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from kronecker.errors import ShapeMismatch
from kronecker.linalg.fields import QQ, Field, PrimeField, Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]
    field: Field = QQ

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeMismatch(f"entries do not match declared shape {self.rows}x{self.cols}")

    # === Construction ===

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[object]],
        field: Field = QQ,
        cols: Optional[int] = None,
    ) -> "ExactMatrix":
        """Build from nested sequences; ``cols`` is needed only for 0-row matrices."""
        data = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        n_cols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), n_cols, data, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        z = field.zero
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls(
            n, n,
            tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)),
            field,
        )

    @classmethod
    def from_function(cls, rows: int, cols: int, fn, field: Field = QQ) -> "ExactMatrix":
        return cls(
            rows, cols,
            tuple(tuple(field.coerce(fn(i, j)) for j in range(cols)) for i in range(rows)),
            field,
        )

    # === Shape helpers ===

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(r[j] for r in self.entries)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.field,
        )

    def to_lists(self) -> List[List[Scalar]]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> List[List[str]]:
        return [[self.field.to_str(v) for v in r] for r in self.entries]

    # === Arithmetic ===

    def _check_same_field(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise ShapeMismatch(f"field mismatch: {self.field.name} vs {other.field.name}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        f = self.field
        return ExactMatrix(
            self.rows, self.cols,
            tuple(tuple(f.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)),
            f,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c: Scalar) -> "ExactMatrix":
        f = self.field
        c = f.coerce(c)
        return ExactMatrix(
            self.rows, self.cols,
            tuple(tuple(f.mul(c, v) for v in r) for r in self.entries),
            f,
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = [other.column(j) for j in range(other.cols)]
        return ExactMatrix(
            self.rows, other.cols,
            tuple(tuple(f.dot(r, c) for c in cols) for r in self.entries),
            f,
        )

    def to_field(self, field: Field) -> "ExactMatrix":
        """Re-coerce every entry into ``field`` (Q → F_p or F_p → F_p)."""
        return ExactMatrix(
            self.rows, self.cols,
            tuple(tuple(field.coerce(v) for v in r) for r in self.entries),
            field,
        )


def block_diagonal(blocks: Iterable[ExactMatrix], field: Field = QQ) -> ExactMatrix:
    """Direct sum of matrices; empty input gives the 0x0 matrix."""
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return ExactMatrix(rows, cols, tuple(tuple(r) for r in data), field)


# === Elimination ===

def row_reduce(
    rows: List[List[Scalar]],
    cols: int,
    field: Field,
) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form, in place on a list-of-lists copy.

    Only the nonzero positions of each pivot row are touched during
    elimination, which keeps sparse systems (hom equations, Toeplitz stacks)
    cheap. Returns the nonzero echelon rows and their pivot columns.
    """
    work = [list(r) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(cols):
        pivot_row = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        prow = work[rank]
        inv = field.inv(prow[col])
        support = [j for j in range(col, cols) if prow[j] != 0]
        for j in support:
            prow[j] = field.mul(prow[j], inv)
        for i in range(len(work)):
            if i == rank:
                continue
            factor = work[i][col]
            if factor == 0:
                continue
            target = work[i]
            for j in support:
                target[j] = field.sub(target[j], field.mul(factor, prow[j]))
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def rank(m: ExactMatrix) -> int:
    """Rank over the matrix's field; 0 for any matrix with a zero dimension."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # Eliminate along the shorter side.
    if m.rows > m.cols:
        m = m.transpose()
    _, pivots = row_reduce(m.to_lists(), m.cols, m.field)
    return len(pivots)


def nullspace(m: ExactMatrix) -> List[Tuple[Scalar, ...]]:
    """Basis of the right kernel as column vectors (tuples of length cols)."""
    f = m.field
    if m.cols == 0:
        return []
    echelon, pivots = row_reduce(m.to_lists(), m.cols, f)
    pivot_set = set(pivots)
    basis: List[Tuple[Scalar, ...]] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [f.zero] * m.cols
        vec[free] = f.one
        for row, pc in zip(echelon, pivots):
            if row[free] != 0:
                vec[pc] = f.neg(row[free])
        basis.append(tuple(vec))
    logger.debug("nullspace of %dx%d: rank %d, nullity %d", m.rows, m.cols, len(pivots), len(basis))
    return basis


def reduce_mod_p(m: ExactMatrix, p: int) -> ExactMatrix:
    """Entrywise image of a rational matrix in F_p; BadPrime if a denominator vanishes."""
    return m.to_field(PrimeField(p))


def random_invertible(n: int, rng: random.Random, entry_range: Tuple[int, int] = (-2, 2)) -> ExactMatrix:
    """Random invertible integer matrix L·U with unit-diagonal triangular factors."""
    lo, hi = entry_range
    lower = ExactMatrix.from_function(
        n, n, lambda i, j: 1 if i == j else (rng.randint(lo, hi) if i > j else 0),
    )
    upper = ExactMatrix.from_function(
        n, n, lambda i, j: 1 if i == j else (rng.randint(lo, hi) if i < j else 0),
    )
    perm = list(range(n))
    rng.shuffle(perm)
    permutation = ExactMatrix.from_function(n, n, lambda i, j: 1 if perm[i] == j else 0)
    return permutation @ lower @ upper


def integer_primitive(vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Rescale a rational vector to integers with content 1 and a positive leading entry."""
    den = 1
    for v in vector:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in vector]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(Fraction(0) for _ in vector)
    lead = next(v for v in ints if v != 0)
    sign = -1 if lead < 0 else 1
    return tuple(Fraction(sign * v // g) for v in ints)
