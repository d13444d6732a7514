"""Matrix pencils (E, H) and the canonical pencils built from invariants.

Convention: a pencil with ``rows`` x ``cols`` matrices is the representation
whose vertex-1 space is Q^cols and vertex-2 space is Q^rows.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional

from kronecker.errors import InvalidPart, ShapeMismatch
from kronecker.invariants import DimensionVector, KroneckerInvariants, ProjectivePoint
from kronecker.linalg import QQ, ExactMatrix, Field, PolyMatrix, block_diagonal
from kronecker.models import PencilDocument

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pencil:
    E: ExactMatrix
    H: ExactMatrix

    def __post_init__(self) -> None:
        if self.E.shape != self.H.shape:
            raise ShapeMismatch(f"E is {self.E.shape} but H is {self.H.shape}")
        if self.E.field != self.H.field:
            raise ShapeMismatch("E and H live over different fields")

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ) -> "Pencil":
        return cls(ExactMatrix.zeros(rows, cols, field), ExactMatrix.zeros(rows, cols, field))

    @property
    def rows(self) -> int:
        return self.E.rows

    @property
    def cols(self) -> int:
        return self.E.cols

    @property
    def field(self) -> Field:
        return self.E.field

    @property
    def dims(self) -> DimensionVector:
        return DimensionVector(dim1=self.cols, dim2=self.rows)

    def conjugate(self, P: ExactMatrix, Q: ExactMatrix) -> "Pencil":
        """The strictly equivalent pencil (P E Q, P H Q)."""
        return Pencil(P @ self.E @ Q, P @ self.H @ Q)

    def transpose(self) -> "Pencil":
        return Pencil(self.E.transpose(), self.H.transpose())

    def to_field(self, field: Field) -> "Pencil":
        return Pencil(self.E.to_field(field), self.H.to_field(field))

    def at(self, value: Fraction) -> ExactMatrix:
        """The constant matrix value*E + H."""
        return self.E.scale(value) + self.H

    def poly_matrix(self) -> PolyMatrix:
        """λE + H over Q[λ]."""
        return PolyMatrix.linear(self.E, self.H)

    def reversed_poly_matrix(self) -> PolyMatrix:
        """μH + E over Q[μ]; its μ-divisors are the infinite ones of λE + H."""
        return PolyMatrix.linear(self.H, self.E)


# === Indecomposables ===

class IndecomposableKind(str, Enum):
    Q = "Q"   # preprojective, size x (size - 1)
    R = "R"   # regular at a point, size x size
    J = "J"   # preinjective, (size - 1) x size


@dataclass(frozen=True)
class Indecomposable:
    kind: IndecomposableKind
    size: int
    point: Optional[ProjectivePoint] = None


def indecomposable_pencil(
    kind: IndecomposableKind,
    size: int,
    point: Optional[ProjectivePoint] = None,
) -> Pencil:
    if size < 1:
        raise InvalidPart(f"{kind.value} block size {size} is smaller than 1")
    if kind is IndecomposableKind.Q:
        return Pencil(
            ExactMatrix.from_function(size, size - 1, lambda i, j: 1 if i == j else 0),
            ExactMatrix.from_function(size, size - 1, lambda i, j: 1 if i == j + 1 else 0),
        )
    if kind is IndecomposableKind.J:
        return Pencil(
            ExactMatrix.from_function(size - 1, size, lambda i, j: 1 if i == j else 0),
            ExactMatrix.from_function(size - 1, size, lambda i, j: 1 if j == i + 1 else 0),
        )
    if point is None:
        raise ValueError("a regular block needs a point")
    nilpotent = ExactMatrix.from_function(size, size, lambda i, j: 1 if j == i + 1 else 0)
    identity = ExactMatrix.identity(size)
    if point.is_infinite:
        return Pencil(nilpotent, identity)
    return Pencil(identity, identity.scale(point.value) + nilpotent)


def iter_blocks(inv: KroneckerInvariants) -> Iterator[Indecomposable]:
    """Indecomposable summands in canonical order: P, then R by point, then I."""
    for a in inv.preprojective:
        yield Indecomposable(IndecomposableKind.Q, a)
    for point, sizes in inv.regular:
        for b in sizes:
            yield Indecomposable(IndecomposableKind.R, b, point)
    for c in inv.preinjective:
        yield Indecomposable(IndecomposableKind.J, c)


def direct_sum(*pencils: Pencil) -> Pencil:
    """Block diagonal sum on both matrices; no arguments gives the 0x0 pencil."""
    field = pencils[0].field if pencils else QQ
    return Pencil(
        block_diagonal((p.E for p in pencils), field),
        block_diagonal((p.H for p in pencils), field),
    )


def canonical_pencil(inv: KroneckerInvariants) -> Pencil:
    blocks: List[Pencil] = [
        indecomposable_pencil(b.kind, b.size, b.point) for b in iter_blocks(inv)
    ]
    pencil = direct_sum(*blocks)
    logger.debug("canonical pencil for %s has shape %dx%d", inv, pencil.rows, pencil.cols)
    return pencil


def transpose_dual(p: Pencil) -> Pencil:
    return p.transpose()


# === JSON documents ===

def from_document(doc: PencilDocument) -> Pencil:
    return Pencil(
        ExactMatrix.from_rows(doc.E, cols=doc.cols),
        ExactMatrix.from_rows(doc.H, cols=doc.cols),
    )


def to_document(p: Pencil) -> PencilDocument:
    return PencilDocument(rows=p.rows, cols=p.cols, E=p.E.to_strings(), H=p.H.to_strings())
