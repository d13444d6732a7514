"""Homomorphism spaces between Kronecker representations.

Two descriptions of Hom(N, M) live here:

  * ``hom_basis`` solves the intertwining equations
        E_M φ1 = φ2 E_N,   H_M φ1 = φ2 H_N
    exactly over Q for arbitrary pencils. ``canonical_hom_basis`` does the
    same for canonical pencils one pair of indecomposable summands at a time,
    which is much cheaper and gives the same space.
  * ``structured_generic_hom`` lays out the generic homomorphism between two
    canonical pencils as a grid of banded blocks with named parameters, for
    the cells whose shape is known in closed form.

φ1 maps the vertex-1 spaces (columns of the pencils), φ2 the vertex-2 spaces
(rows): φ1 is dim1(M) x dim1(N) and φ2 is dim2(M) x dim2(N).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from kronecker.errors import ArityMismatch, UnstructuredBlock
from kronecker.invariants import DimensionVector, KroneckerInvariants, dimension_vector
from kronecker.linalg import QQ, ExactMatrix, Field, integer_primitive, nullspace
from kronecker.pencil import (
    Indecomposable,
    IndecomposableKind,
    Pencil,
    indecomposable_pencil,
    iter_blocks,
)

logger = logging.getLogger(__name__)

HomPair = Tuple[ExactMatrix, ExactMatrix]


@dataclass(frozen=True)
class HomBasis:
    source: DimensionVector
    target: DimensionVector
    basis: Tuple[HomPair, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def component(self, index: int) -> List[ExactMatrix]:
        """All basis matrices of component 1 (φ1) or 2 (φ2)."""
        return [pair[index - 1] for pair in self.basis]

    def shape(self, index: int) -> Tuple[int, int]:
        if index == 1:
            return (self.target.dim1, self.source.dim1)
        return (self.target.dim2, self.source.dim2)


# === Exact solver ===

def _intertwining_system(N: Pencil, M: Pencil) -> List[List[object]]:
    """Coefficient rows of the linear system in the entries of (φ1, φ2)."""
    n1, n2 = N.cols, N.rows
    m1, m2 = M.cols, M.rows
    offset = m1 * n1
    unknowns = offset + m2 * n2
    zero = QQ.zero
    rows: List[List[object]] = []
    for target, source in ((M.E, N.E), (M.H, N.H)):
        for r in range(m2):
            for c in range(n1):
                row = [zero] * unknowns
                for k in range(m1):
                    coeff = target[r, k]
                    if coeff:
                        row[k * n1 + c] = coeff
                for l in range(n2):
                    coeff = source[l, c]
                    if coeff:
                        row[offset + r * n2 + l] -= coeff
                rows.append(row)
    return rows


def _split(vector: Sequence, N: Pencil, M: Pencil) -> HomPair:
    n1, n2 = N.cols, N.rows
    m1, m2 = M.cols, M.rows
    offset = m1 * n1
    phi1 = ExactMatrix.from_function(m1, n1, lambda i, j: vector[i * n1 + j])
    phi2 = ExactMatrix.from_function(m2, n2, lambda i, j: vector[offset + i * n2 + j])
    return phi1, phi2


def hom_basis(N: Pencil, M: Pencil) -> HomBasis:
    """Exact basis of Hom(N, M), rescaled to integer matrices with content 1."""
    unknowns = M.cols * N.cols + M.rows * N.rows
    system = _intertwining_system(N, M)
    if system:
        kernel = nullspace(ExactMatrix.from_rows(system, cols=unknowns))
    else:
        # No equations: every pair of maps intertwines.
        kernel = [
            tuple(QQ.one if i == k else QQ.zero for i in range(unknowns))
            for k in range(unknowns)
        ]
    basis = tuple(_split(integer_primitive(v), N, M) for v in kernel)
    logger.debug(
        "hom space %dx%d -> %dx%d: %d unknowns, dimension %d",
        N.rows, N.cols, M.rows, M.cols, unknowns, len(basis),
    )
    return HomBasis(source=N.dims, target=M.dims, basis=basis)


def hom_dimension(N: Pencil, M: Pencil) -> int:
    return hom_basis(N, M).dimension


def intertwines(N: Pencil, M: Pencil, phi1: ExactMatrix, phi2: ExactMatrix) -> bool:
    """Whether (φ1, φ2) satisfies both intertwining equations exactly."""
    field = phi1.field
    if phi1.shape != (M.cols, N.cols) or phi2.shape != (M.rows, N.rows):
        return False
    Nf = N.to_field(field)
    Mf = M.to_field(field)
    return (Mf.E @ phi1 == phi2 @ Nf.E) and (Mf.H @ phi1 == phi2 @ Nf.H)


@lru_cache(maxsize=4096)
def block_hom_basis(source: Indecomposable, target: Indecomposable) -> Tuple[HomPair, ...]:
    """Hom between two indecomposable summands (cached, blocks repeat a lot)."""
    return hom_basis(
        indecomposable_pencil(source.kind, source.size, source.point),
        indecomposable_pencil(target.kind, target.size, target.point),
    ).basis


def _block_dims(block: Indecomposable) -> DimensionVector:
    if block.kind is IndecomposableKind.Q:
        return DimensionVector(block.size - 1, block.size)
    if block.kind is IndecomposableKind.J:
        return DimensionVector(block.size, block.size - 1)
    return DimensionVector(block.size, block.size)


def _offsets(blocks: Sequence[Indecomposable]) -> List[DimensionVector]:
    offsets = []
    d1 = d2 = 0
    for block in blocks:
        offsets.append(DimensionVector(d1, d2))
        dims = _block_dims(block)
        d1 += dims.dim1
        d2 += dims.dim2
    return offsets


def _embed(block: ExactMatrix, rows: int, cols: int, r0: int, c0: int) -> ExactMatrix:
    data = [[QQ.zero] * cols for _ in range(rows)]
    for i in range(block.rows):
        for j in range(block.cols):
            data[r0 + i][c0 + j] = block[i, j]
    return ExactMatrix(rows, cols, tuple(tuple(r) for r in data))


def canonical_hom_basis(N_inv: KroneckerInvariants, M_inv: KroneckerInvariants) -> HomBasis:
    """Basis of Hom between canonical pencils, assembled summand by summand.

    Hom of direct sums is the direct sum of the Homs between summands, so each
    basis element is supported on a single (target, source) block cell.
    Elements are ordered row-major over the cells.
    """
    source_blocks = list(iter_blocks(N_inv))
    target_blocks = list(iter_blocks(M_inv))
    source_offsets = _offsets(source_blocks)
    target_offsets = _offsets(target_blocks)
    N_dims = dimension_vector(N_inv)
    M_dims = dimension_vector(M_inv)

    basis: List[HomPair] = []
    for target, t_off in zip(target_blocks, target_offsets):
        for source, s_off in zip(source_blocks, source_offsets):
            for phi1, phi2 in block_hom_basis(source, target):
                basis.append((
                    _embed(phi1, M_dims.dim1, N_dims.dim1, t_off.dim1, s_off.dim1),
                    _embed(phi2, M_dims.dim2, N_dims.dim2, t_off.dim2, s_off.dim2),
                ))
    return HomBasis(source=N_dims, target=M_dims, basis=tuple(basis))


# === Structured generic homomorphism ===

class BlockForm(str, Enum):
    FORM1 = "form1"                  # preprojective into preprojective, lower band
    FORM2 = "form2"                  # preinjective into preinjective, upper band
    FORM3 = "form3"                  # regular into regular at one point, top-right band
    ZERO = "zero"
    UNSTRUCTURED = "unstructured"    # mixed families, left to the exact solver


@dataclass(frozen=True)
class BlockShape:
    form: BlockForm
    rows: int
    cols: int
    param_ids: Tuple[int, ...] = ()

    @property
    def param_count(self) -> int:
        return len(self.param_ids)

    def entry(self, r: int, c: int) -> Optional[int]:
        """Parameter id at (r, c), or None where the block is identically zero."""
        width = len(self.param_ids)
        if self.form is BlockForm.FORM1:
            offset = r - c
            return self.param_ids[offset] if 0 <= offset < width else None
        if self.form is BlockForm.FORM2:
            offset = c - r
            return self.param_ids[offset] if 0 <= offset < width else None
        if self.form is BlockForm.FORM3:
            # The parameter with the smallest id sits in the top-right corner.
            offset = self.cols - 1 - (c - r)
            return self.param_ids[offset] if 0 <= offset < width else None
        return None


@dataclass(frozen=True)
class GenericHom:
    source: KroneckerInvariants
    target: KroneckerInvariants
    source_blocks: Tuple[Indecomposable, ...]
    target_blocks: Tuple[Indecomposable, ...]
    component1: Tuple[Tuple[BlockShape, ...], ...]
    component2: Tuple[Tuple[BlockShape, ...], ...]

    @property
    def cells(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(len(self.target_blocks)) for j in range(len(self.source_blocks))]

    def grid(self, index: int) -> Tuple[Tuple[BlockShape, ...], ...]:
        return self.component1 if index == 1 else self.component2

    def unstructured_cells(self) -> List[Tuple[int, int]]:
        return [
            (i, j) for i, j in self.cells
            if self.component2[i][j].form is BlockForm.UNSTRUCTURED
        ]


def _cell_forms(
    target: Indecomposable,
    source: Indecomposable,
) -> Tuple[BlockForm, int]:
    """Block form of the (target, source) cell and its parameter count."""
    K = IndecomposableKind
    if target.kind is K.Q and source.kind is K.Q:
        a, d = target.size, source.size
        return (BlockForm.FORM1, a - d + 1) if a >= d else (BlockForm.ZERO, 0)
    if target.kind is K.J and source.kind is K.J:
        c, f = target.size, source.size
        return (BlockForm.FORM2, f - c + 1) if c <= f else (BlockForm.ZERO, 0)
    if target.kind is K.R and source.kind is K.R:
        if target.point != source.point:
            return BlockForm.ZERO, 0
        return BlockForm.FORM3, min(target.size, source.size)
    order = {K.Q: 0, K.R: 1, K.J: 2}
    if order[target.kind] < order[source.kind]:
        # Nothing maps from a later family into an earlier one.
        return BlockForm.ZERO, 0
    return BlockForm.UNSTRUCTURED, 0


def structured_generic_hom(N_inv: KroneckerInvariants, M_inv: KroneckerInvariants) -> GenericHom:
    """Block grid of the generic homomorphism from N into M.

    Parameter ids are consecutive integers handed out row-major over the
    cells; both components of a cell share the same parameters.
    """
    source_blocks = tuple(iter_blocks(N_inv))
    target_blocks = tuple(iter_blocks(M_inv))
    next_id = 0
    grid1: List[Tuple[BlockShape, ...]] = []
    grid2: List[Tuple[BlockShape, ...]] = []
    for target in target_blocks:
        t_dims = _block_dims(target)
        row1: List[BlockShape] = []
        row2: List[BlockShape] = []
        for source in source_blocks:
            s_dims = _block_dims(source)
            form, count = _cell_forms(target, source)
            ids = tuple(range(next_id, next_id + count))
            next_id += count
            row1.append(BlockShape(form, t_dims.dim1, s_dims.dim1, ids))
            row2.append(BlockShape(form, t_dims.dim2, s_dims.dim2, ids))
        grid1.append(tuple(row1))
        grid2.append(tuple(row2))
    g = GenericHom(
        source=N_inv,
        target=M_inv,
        source_blocks=source_blocks,
        target_blocks=target_blocks,
        component1=tuple(grid1),
        component2=tuple(grid2),
    )
    logger.debug("generic hom %s -> %s: %d parameters", N_inv, M_inv, next_id)
    return g


def param_count(g: GenericHom) -> int:
    """Number of free parameters; equals dim Hom when no cell is unstructured."""
    unstructured = g.unstructured_cells()
    if unstructured:
        raise UnstructuredBlock(f"cells {unstructured} mix families and have no closed form")
    return sum(g.component2[i][j].param_count for i, j in g.cells)


def _assemble(
    g: GenericHom,
    index: int,
    values: Dict[int, object],
    field: Field,
) -> ExactMatrix:
    grid = g.grid(index)
    source_offsets = _offsets(g.source_blocks)
    target_offsets = _offsets(g.target_blocks)
    pick = (lambda d: d.dim1) if index == 1 else (lambda d: d.dim2)
    rows = sum(pick(_block_dims(b)) for b in g.target_blocks)
    cols = sum(pick(_block_dims(b)) for b in g.source_blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    for i, j in g.cells:
        shape = grid[i][j]
        r0, c0 = pick(target_offsets[i]), pick(source_offsets[j])
        for r in range(shape.rows):
            for c in range(shape.cols):
                pid = shape.entry(r, c)
                if pid is not None:
                    data[r0 + r][c0 + c] = values[pid]
    return ExactMatrix(rows, cols, tuple(tuple(r) for r in data), field)


def specialize(
    g: Union[GenericHom, HomBasis],
    values: Sequence[object],
    field: Field = QQ,
) -> HomPair:
    """Substitute concrete values for the parameters of ``g``.

    For a GenericHom, ``values[k]`` is the value of parameter id k. For a
    HomBasis, ``values`` are coefficients of the basis elements. The result is
    over ``field`` and always intertwines.
    """
    if isinstance(g, HomBasis):
        if len(values) != g.dimension:
            raise ArityMismatch(f"expected {g.dimension} coefficients, got {len(values)}")
        coeffs = [field.coerce(v) for v in values]
        result = []
        for index in (1, 2):
            rows, cols = g.shape(index)
            acc = ExactMatrix.zeros(rows, cols, field)
            for coeff, pair in zip(coeffs, g.basis):
                if coeff:
                    acc = acc + pair[index - 1].to_field(field).scale(coeff)
            result.append(acc)
        return result[0], result[1]

    expected = param_count(g)
    if len(values) != expected:
        raise ArityMismatch(f"expected {expected} parameter values, got {len(values)}")
    assignment = {k: field.coerce(v) for k, v in enumerate(values)}
    return _assemble(g, 1, assignment, field), _assemble(g, 2, assignment, field)
