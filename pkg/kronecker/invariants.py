"""Kronecker invariants: the complete isomorphism invariant of a pencil.

A representation is described by three families of block sizes:

  preprojective   sizes a_1 >= a_2 >= ... of the Q blocks
  regular         a partition of block sizes at each point of the projective line
  preinjective    sizes c_1 >= c_2 >= ... of the J blocks

Values here are immutable and always normalized: lists descending, points
deduplicated and ordered with infinity first, then finite points by value.
"""
from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.utilities.iterables import partitions

from kronecker.errors import InvalidPart, InvalidPoint, NotSorted
from kronecker.models import InvariantsDocument, RegularEntry

logger = logging.getLogger(__name__)

INFINITY_NAMES = {"inf", "infinity", "∞"}


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of the projective line: a finite rational, or infinity (value None)."""

    value: Optional[Fraction] = None

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(None)

    @classmethod
    def finite(cls, value: Union[Fraction, int, str]) -> "ProjectivePoint":
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        """Parse ``"inf"`` or a rational string such as ``"-1/2"``."""
        cleaned = str(text).strip()
        if cleaned.lower() in INFINITY_NAMES:
            return cls.infinity()
        try:
            return cls(Fraction(cleaned))
        except (ValueError, ZeroDivisionError):
            raise InvalidPoint(f"not a projective point: {text!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def sort_key(self) -> Tuple[int, Fraction]:
        if self.value is None:
            return (0, Fraction(0))
        return (1, self.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


PointLike = Union[ProjectivePoint, str, int, Fraction]


def as_point(raw: PointLike) -> ProjectivePoint:
    if isinstance(raw, ProjectivePoint):
        return raw
    if isinstance(raw, str):
        return ProjectivePoint.parse(raw)
    return ProjectivePoint.finite(raw)


@dataclass(frozen=True)
class DimensionVector:
    """Dimensions of the spaces at vertex 1 (columns) and vertex 2 (rows)."""

    dim1: int
    dim2: int

    def swap(self) -> "DimensionVector":
        return DimensionVector(self.dim2, self.dim1)

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        return DimensionVector(self.dim1 + other.dim1, self.dim2 + other.dim2)

    def dominated_by(self, other: "DimensionVector") -> bool:
        return self.dim1 <= other.dim1 and self.dim2 <= other.dim2

    @property
    def total(self) -> int:
        return self.dim1 + self.dim2


class RepresentationType(str, Enum):
    """Which indecomposable families occur in a representation."""
    ZERO = "zero"
    PREPROJECTIVE = "preprojective"
    REGULAR = "regular"
    PREINJECTIVE = "preinjective"
    MIXED = "mixed"


RegularPart = Tuple[Tuple[ProjectivePoint, Tuple[int, ...]], ...]


@dataclass(frozen=True)
class KroneckerInvariants:
    preprojective: Tuple[int, ...] = ()
    regular: RegularPart = ()
    preinjective: Tuple[int, ...] = ()

    # === Views ===

    @property
    def points(self) -> Tuple[ProjectivePoint, ...]:
        return tuple(point for point, _ in self.regular)

    def regular_map(self) -> Dict[ProjectivePoint, Tuple[int, ...]]:
        return dict(self.regular)

    def sizes_at(self, point: ProjectivePoint) -> Tuple[int, ...]:
        return self.regular_map().get(point, ())

    @property
    def kind(self) -> RepresentationType:
        present = [
            family
            for family, parts in (
                (RepresentationType.PREPROJECTIVE, self.preprojective),
                (RepresentationType.REGULAR, self.regular),
                (RepresentationType.PREINJECTIVE, self.preinjective),
            )
            if parts
        ]
        if not present:
            return RepresentationType.ZERO
        if len(present) > 1:
            return RepresentationType.MIXED
        return present[0]

    def is_zero(self) -> bool:
        return self.kind is RepresentationType.ZERO

    def __str__(self) -> str:
        reg = ", ".join(f"{p}:{list(sizes)}" for p, sizes in self.regular)
        return f"P{list(self.preprojective)} R{{{reg}}} I{list(self.preinjective)}"


# === Normal form ===

def _checked_parts(parts: Iterable[int], label: str) -> List[int]:
    checked = []
    for part in parts:
        if not isinstance(part, int) or isinstance(part, bool):
            raise InvalidPart(f"{label} part {part!r} is not an integer")
        if part < 1:
            raise InvalidPart(f"{label} part {part} is smaller than 1")
        checked.append(part)
    return checked


def normalize(
    preprojective: Iterable[int] = (),
    regular: Iterable[Tuple[PointLike, Iterable[int]]] = (),
    preinjective: Iterable[int] = (),
) -> KroneckerInvariants:
    """Bring raw invariants into normal form.

    Lists are sorted descending, repeated points are merged into one
    partition, and empty partitions are dropped. Raises InvalidPart for any
    part below 1 and InvalidPoint for an unparsable point.
    """
    merged: Dict[ProjectivePoint, List[int]] = defaultdict(list)
    for raw_point, sizes in regular:
        point = as_point(raw_point)
        merged[point].extend(_checked_parts(sizes, f"regular[{point}]"))
    return KroneckerInvariants(
        preprojective=tuple(sorted(_checked_parts(preprojective, "preprojective"), reverse=True)),
        regular=tuple(
            (point, tuple(sorted(merged[point], reverse=True)))
            for point in sorted(merged, key=ProjectivePoint.sort_key)
            if merged[point]
        ),
        preinjective=tuple(sorted(_checked_parts(preinjective, "preinjective"), reverse=True)),
    )


def require_descending(parts: Sequence[int], label: str) -> None:
    """Raise NotSorted unless ``parts`` is weakly descending."""
    for prev, nxt in zip(parts, parts[1:]):
        if nxt > prev:
            raise NotSorted(f"{label} must be descending, got {list(parts)}")


def dimension_vector(inv: KroneckerInvariants) -> DimensionVector:
    regular_total = sum(sum(sizes) for _, sizes in inv.regular)
    return DimensionVector(
        dim1=sum(a - 1 for a in inv.preprojective) + regular_total + sum(inv.preinjective),
        dim2=sum(inv.preprojective) + regular_total + sum(c - 1 for c in inv.preinjective),
    )


def dualize(inv: KroneckerInvariants) -> KroneckerInvariants:
    """Invariants of the transposed pencil: the two outer families trade places."""
    return KroneckerInvariants(
        preprojective=inv.preinjective,
        regular=inv.regular,
        preinjective=inv.preprojective,
    )


def direct_sum_invariants(*parts: KroneckerInvariants) -> KroneckerInvariants:
    return normalize(
        preprojective=[a for inv in parts for a in inv.preprojective],
        regular=[entry for inv in parts for entry in inv.regular],
        preinjective=[c for inv in parts for c in inv.preinjective],
    )


# === JSON documents ===

def from_document(doc: InvariantsDocument) -> KroneckerInvariants:
    return normalize(
        preprojective=doc.preprojective,
        regular=[(entry.point, entry.sizes) for entry in doc.regular],
        preinjective=doc.preinjective,
    )


def to_document(inv: KroneckerInvariants) -> InvariantsDocument:
    return InvariantsDocument(
        preprojective=list(inv.preprojective),
        regular=[RegularEntry(point=str(p), sizes=list(sizes)) for p, sizes in inv.regular],
        preinjective=list(inv.preinjective),
    )


# === Enumeration ===

def iter_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as descending tuples; n = 0 yields the empty partition."""
    if n == 0:
        yield ()
        return
    for multiplicities in partitions(n):
        yield tuple(sorted(
            (part for part, count in multiplicities.items() for _ in range(count)),
            reverse=True,
        ))


def iter_partitions_up_to(bound: int) -> Iterator[Tuple[int, ...]]:
    """All partitions with sum at most ``bound``, smallest sums first."""
    for n in range(bound + 1):
        yield from iter_partitions(n)


def iter_regular_parts(
    points: Sequence[PointLike],
    per_point_bound: int,
) -> Iterator[RegularPart]:
    """Every regular part supported on a subset of ``points`` with bounded sums."""
    pts = sorted((as_point(p) for p in points), key=ProjectivePoint.sort_key)
    choices = list(iter_partitions_up_to(per_point_bound))
    for combo in product(choices, repeat=len(pts)):
        yield tuple((p, sizes) for p, sizes in zip(pts, combo) if sizes)


def iter_invariants(
    bound: DimensionVector,
    points: Sequence[PointLike] = (),
) -> Iterator[KroneckerInvariants]:
    """All invariants with dimension vector at most ``bound``.

    Regular parts are restricted to ``points``. Enumeration prunes on the
    running dimension vector, so bounds up to about 6 stay small.
    """
    pts = sorted({as_point(p) for p in points}, key=ProjectivePoint.sort_key)
    for pre in iter_partitions_up_to(bound.dim2):
        base = dimension_vector(KroneckerInvariants(preprojective=pre))
        if not base.dominated_by(bound):
            continue
        for regular in _regular_within(pts, bound, base):
            reg_dims = dimension_vector(KroneckerInvariants(regular=regular))
            used = base + reg_dims
            if not used.dominated_by(bound):
                continue
            for pri in iter_partitions_up_to(bound.dim1 - used.dim1):
                inv = KroneckerInvariants(preprojective=pre, regular=regular, preinjective=pri)
                if dimension_vector(inv).dominated_by(bound):
                    yield inv


def _regular_within(
    points: Sequence[ProjectivePoint],
    bound: DimensionVector,
    base: DimensionVector,
) -> Iterator[RegularPart]:
    room = min(bound.dim1 - base.dim1, bound.dim2 - base.dim2)
    if not points or room <= 0:
        yield ()
        return
    choices = list(iter_partitions_up_to(room))
    for combo in product(choices, repeat=len(points)):
        if sum(sum(sizes) for sizes in combo) <= room:
            yield tuple((p, sizes) for p, sizes in zip(points, combo) if sizes)


def random_invariants(
    rng: random.Random,
    max_total_dim: int,
    points: Sequence[PointLike],
) -> KroneckerInvariants:
    """Random invariants with dim1 + dim2 <= ``max_total_dim``.

    Blocks are drawn one at a time (family, point, size) until three draws
    in a row no longer fit the remaining budget.
    """
    pts = [as_point(p) for p in points]
    pre: List[int] = []
    pri: List[int] = []
    regular: List[Tuple[ProjectivePoint, List[int]]] = []
    budget = rng.randint(0, max_total_dim)
    used = 0
    misses = 0
    while misses < 3:
        remaining = budget - used
        family = rng.choice("PRI" if pts else "PI")
        # Q_a and J_c contribute 2a - 1, R_b contributes 2b.
        largest = remaining // 2 if family == "R" else (remaining + 1) // 2
        if largest < 1:
            misses += 1
            continue
        size = rng.randint(1, largest)
        if family == "P":
            pre.append(size)
            used += 2 * size - 1
        elif family == "I":
            pri.append(size)
            used += 2 * size - 1
        else:
            regular.append((rng.choice(pts), [size]))
            used += 2 * size
    return normalize(preprojective=pre, regular=regular, preinjective=pri)
