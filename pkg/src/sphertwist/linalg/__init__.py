from .dense import (
    Matrix,
    column_basis,
    extend_to_complement,
    in_span,
    inverse,
    nullspace,
    rank,
    rank_kernel_image,
    rref,
    solve,
)
from .fields import DEFAULT_PRIME, QQ, Field, PrimeField, Rationals, default_field, parse_field
from .sparse import sparse_rank
from .poly import Poly, SmithForm, identity_poly_matrix, poly_matmul, smith_normal_form_poly

__all__ = [
    "DEFAULT_PRIME",
    "Field",
    "Matrix",
    "Poly",
    "PrimeField",
    "QQ",
    "Rationals",
    "SmithForm",
    "column_basis",
    "default_field",
    "extend_to_complement",
    "identity_poly_matrix",
    "in_span",
    "inverse",
    "nullspace",
    "parse_field",
    "poly_matmul",
    "rank",
    "rank_kernel_image",
    "rref",
    "smith_normal_form_poly",
    "solve",
    "sparse_rank",
]
