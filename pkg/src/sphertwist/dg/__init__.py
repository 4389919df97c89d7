from .algebra import GradedAlgebra
from .homcx import ComplexOfGradedSpaces, GradedVectorSpace, HomComplex, cohomology_dims, hom_complex, hom_total_dim
from .minimal import ShiftIsomorphism, is_invertible_degree_zero, iso_up_to_shift, isomorphic, minimize
from .objects import (
    Convolution,
    Morphism,
    TwistedComplex,
    block_object,
    convolve,
    dg_cone,
    direct_sum,
    from_positions,
    identity,
    shift,
)

__all__ = [
    "ComplexOfGradedSpaces",
    "Convolution",
    "GradedAlgebra",
    "GradedVectorSpace",
    "HomComplex",
    "Morphism",
    "ShiftIsomorphism",
    "TwistedComplex",
    "block_object",
    "cohomology_dims",
    "convolve",
    "dg_cone",
    "direct_sum",
    "from_positions",
    "hom_complex",
    "hom_total_dim",
    "identity",
    "is_invertible_degree_zero",
    "iso_up_to_shift",
    "isomorphic",
    "minimize",
    "shift",
]
