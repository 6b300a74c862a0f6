from __future__ import annotations

from .cbv import (
    CbvCoefficients,
    RealCoefficients,
    cbv_from_real,
    cbv_residual,
    coefficients_from_structure,
)
from .holomorphy import (
    HOLO_OPERATOR,
    ConstructedSolution,
    construct_solution,
    holo_residual,
    real_cr_residual,
)
from .operators import (
    ComplexOneForm,
    d_structural,
    dx_dy_operators,
    exterior_differential,
    k_transform,
    k_transform_parts,
    structural_derivatives,
)
from .structural import KappaPartials, StructuralFunction

# Modules to be automatically added to the structura namespace
__all__ = [
    "CbvCoefficients",
    "ComplexOneForm",
    "ConstructedSolution",
    "KappaPartials",
    "RealCoefficients",
    "StructuralFunction",
    "cbv_from_real",
    "cbv_residual",
    "coefficients_from_structure",
    "construct_solution",
    "d_structural",
    "dx_dy_operators",
    "exterior_differential",
    "holo_residual",
    "k_transform",
    "k_transform_parts",
    "real_cr_residual",
    "structural_derivatives",
]
