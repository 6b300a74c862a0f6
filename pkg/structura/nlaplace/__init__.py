from __future__ import annotations

from .laplace import eta, nl_laplace_residual, nonlinear_laplace, psi
from .ncr import NcrPair, fg_cr_check, fg_from_structure, laplace_rhs_check, ncr_residual
from .several import (
    MultiPoint,
    MultiStructuralFunction,
    SeparableField,
    d_structural_nd,
    nonlinear_laplace_nd,
    separable_field,
)

# Modules to be automatically added to the structura namespace
__all__ = [
    "MultiPoint",
    "MultiStructuralFunction",
    "NcrPair",
    "SeparableField",
    "d_structural_nd",
    "eta",
    "fg_cr_check",
    "fg_from_structure",
    "laplace_rhs_check",
    "ncr_residual",
    "nl_laplace_residual",
    "nonlinear_laplace",
    "nonlinear_laplace_nd",
    "psi",
    "separable_field",
]
