"""Modules over the graded dual numbers ``A_d = K[eps]/eps^2``."""

from .endo import endo_algebra_dims, ind_phi_lambda, is_dual_numbers_like
from .koszul import (
    DecompositionReport,
    KoszulCohomology,
    KoszulComplex,
    decompose,
    expected_report,
    is_compact,
    koszul_cohomology,
    koszul_dual,
    report_from_json,
)
from .module import (
    ADModule,
    contractible_pair,
    direct_sum,
    make_A,
    make_B,
    make_C,
    random_degree_preserving,
    zero_module,
)
from .tensor import TruncatedTensor, independent_classes, is_closed, level_sign, listed_classes, truncated_tensor

__all__ = [
    "ADModule",
    "DecompositionReport",
    "KoszulCohomology",
    "KoszulComplex",
    "TruncatedTensor",
    "contractible_pair",
    "decompose",
    "direct_sum",
    "endo_algebra_dims",
    "expected_report",
    "independent_classes",
    "ind_phi_lambda",
    "is_closed",
    "is_compact",
    "is_dual_numbers_like",
    "koszul_cohomology",
    "koszul_dual",
    "level_sign",
    "listed_classes",
    "make_A",
    "make_B",
    "make_C",
    "random_degree_preserving",
    "report_from_json",
    "truncated_tensor",
    "zero_module",
]
