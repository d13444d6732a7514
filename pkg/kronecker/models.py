"""Pydantic v2 models for the toolkit's JSON surfaces.

Defines the data contract for files read and written by the CLI: invariants
documents, pencil documents, and every report printed on stdout. All rationals
travel as strings so no precision is lost in transit.
"""
from __future__ import annotations

from enum import Enum, IntEnum
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from kronecker.config import TOOLKIT_VERSION


class DecisionMode(str, Enum):
    THEOREM = "theorem"
    GENERIC = "generic"
    BOTH = "both"


class Provenance(str, Enum):
    """What produced a verdict: a closed-form criterion or the randomized oracle."""
    PREPROJECTIVE = "preprojective"
    PREINJECTIVE = "preinjective"
    REGULAR = "regular"
    PRE_INTO_PRI = "pre-into-pri"
    HOM_VANISHING = "hom-vanishing"      # oracle prefilter: hom is zero on a summand
    TRIVIAL = "trivial"                  # zero sub-object
    ORACLE = "oracle"
    GENERIC_ONLY = "generic-only"        # both mode, no criterion covers the pair


class ComponentIndex(IntEnum):
    ONE = 1
    TWO = 2


class Relation(str, Enum):
    SUB = "sub"
    FACTOR = "factor"


# === Input documents ===

class RegularEntry(BaseModel):
    """Partition of regular block sizes at one projective point."""
    point: str
    sizes: List[int]


class InvariantsDocument(BaseModel):
    """Kronecker invariants as stored on disk (not necessarily normalized)."""
    preprojective: List[int] = Field(default_factory=list)
    regular: List[RegularEntry] = Field(default_factory=list)
    preinjective: List[int] = Field(default_factory=list)


class PencilDocument(BaseModel):
    """A pencil (E, H) with rational entries written as strings, row-major."""
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    E: List[List[str]]
    H: List[List[str]]

    @field_validator("E", "H")
    @classmethod
    def _entries_are_rationals(cls, value: List[List[str]]) -> List[List[str]]:
        for row in value:
            for entry in row:
                try:
                    Fraction(entry.strip())
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"entry {entry!r} is not a rational number")
        return value

    @model_validator(mode="after")
    def _shapes_match(self) -> "PencilDocument":
        for name in ("E", "H"):
            matrix = getattr(self, name)
            if len(matrix) != self.rows:
                raise ValueError(f"{name} has {len(matrix)} rows, expected {self.rows}")
            for i, row in enumerate(matrix):
                if len(row) != self.cols:
                    raise ValueError(f"{name}[{i}] has {len(row)} entries, expected {self.cols}")
        return self


# === Reports ===

class RankReport(BaseModel):
    """Sampled rank of one component of a generic homomorphism."""
    component: ComponentIndex
    columns: int
    formula_rank: Optional[int] = None
    sampled_rank: int
    trials: int
    prime: int
    agreement: bool
    full_column_rank: bool
    error_bound: float = 0.0


class EmbedReport(BaseModel):
    """Provenance of a randomized embedding decision."""
    trials: int
    prime: int
    seed: int
    hom_dimension: int
    successful_trial: Optional[int] = None
    component1: RankReport
    component2: RankReport


class Verdict(BaseModel):
    embeds: bool
    relation: Relation = Relation.SUB
    mode: DecisionMode
    provenance: Provenance
    report: Optional[EmbedReport] = None
    toolkit_version: str = TOOLKIT_VERSION


class HomDimensionReport(BaseModel):
    hom_dimension: int
    structured_param_count: Optional[int] = None


class RankFormulaResult(BaseModel):
    kind: str
    rank: int


class SubfactorResult(BaseModel):
    """Outcome of the bounded search for an intermediate representation L."""
    found: bool
    heuristic: bool = True
    max_dim: int
    candidates_checked: int = 0
    witness: Optional[InvariantsDocument] = None


class SuiteSummary(BaseModel):
    """Machine-readable result of one verify suite."""
    suite: str
    bound: int
    seed: int
    prime: int
    trials: int
    instances: int = 0
    agreements: int = 0
    disagreements: int = 0
    cache_hits: int = 0
    elapsed_seconds: float = 0.0
    failures: List[str] = Field(default_factory=list)
    toolkit_version: str = TOOLKIT_VERSION

    @property
    def passed(self) -> bool:
        return self.disagreements == 0


# === Rank CLI arguments ===

class PreprojectiveRankArgs(BaseModel):
    a: List[int]
    d: List[int]


class PreinjectiveRankArgs(BaseModel):
    c: List[int]
    f: List[int]


class RegularRankArgs(BaseModel):
    M: List[RegularEntry]
    N: List[RegularEntry]


class BlockTriangularArgs(BaseModel):
    rows: List[int]
    cols: List[int]
