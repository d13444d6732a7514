"""Exact arithmetic kernel: fields, dense matrices, polynomial matrices."""
from kronecker.linalg.fields import QQ, Field, PrimeField, RationalField, Scalar, sampling_field
from kronecker.linalg.matrix import (
    ExactMatrix,
    block_diagonal,
    integer_primitive,
    nullspace,
    random_invertible,
    rank,
    reduce_mod_p,
    row_reduce,
)
from kronecker.linalg.poly import (
    LAMBDA,
    PolyMatrix,
    coefficients,
    make_poly,
    smith_normal_form,
    vanishing_order,
)

__all__ = [
    "QQ",
    "Field",
    "PrimeField",
    "RationalField",
    "Scalar",
    "sampling_field",
    "ExactMatrix",
    "block_diagonal",
    "integer_primitive",
    "nullspace",
    "random_invertible",
    "rank",
    "reduce_mod_p",
    "row_reduce",
    "LAMBDA",
    "PolyMatrix",
    "coefficients",
    "make_poly",
    "smith_normal_form",
    "vanishing_order",
]
