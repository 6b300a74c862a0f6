from __future__ import annotations

from typing import Any

import numpy as np

from structura.fields import (
    ComplexPoint,
    GridDomain,
    ResidualReport,
    SampledField,
    build_report,
    evaluate_field,
    field_label,
)
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.structure import StructuralFunction
from structura.types import ComplexField, TArray
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    quarter_laplacian,
    wirtinger_derivatives,
)

logger = get_logger(__name__)


def psi_values(S: StructuralFunction, z: TArray, policy: StepPolicy = DEFAULT_POLICY) -> Any:
    K_z, K_zbar = S.derivatives(z, policy)
    return S.mixed(z, policy) + K_z * K_zbar


def psi(
    S: StructuralFunction, z0: ComplexPoint | complex, policy: StepPolicy = DEFAULT_POLICY
) -> complex:
    """
    Zero order coefficient `psi = K_{z zbar} + K_z K_zbar` of the nonlinear Laplace operator.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.nlaplace import psi
    from structura.structure import StructuralFunction

    print(psi(StructuralFunction.from_expression("z*conj(z)"), 1 + 1j))
    ```
    """
    return complex(psi_values(S, ComplexPoint.from_complex(z0).z, policy))


def eta(
    S: StructuralFunction, z0: ComplexPoint | complex, policy: StepPolicy = DEFAULT_POLICY
) -> complex:
    """`(1/4) Laplacian(K) + K_z K_zbar`, with the Laplacian from the five point stencil.

    Agrees with `psi` up to the stencil error.
    """
    z = ComplexPoint.from_complex(z0).z
    K_z, K_zbar = S.derivatives(z, policy)
    return complex(quarter_laplacian(S.K, z, policy) + K_z * K_zbar)


def nonlinear_laplace_values(
    w: ComplexField, S: StructuralFunction, z: TArray, policy: StepPolicy = DEFAULT_POLICY
) -> Any:
    w_z, w_zbar = wirtinger_derivatives(w, z, policy)
    K_z, K_zbar = S.derivatives(z, policy)
    return (
        quarter_laplacian(w, z, policy)
        + K_zbar * w_z
        + K_z * w_zbar
        + psi_values(S, z, policy) * evaluate_field(w, z)
    )


def nonlinear_laplace(
    w: ComplexField,
    S: StructuralFunction,
    z0: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
) -> complex:
    """
    `Delta_K w = w_{z zbar} + K_zbar w_z + K_z w_zbar + psi w`.

    This is the structural `D_z` applied to the field `D_zbar w`. For constant K it is a
    quarter of the five point Laplacian of `w`.
    """
    return complex(nonlinear_laplace_values(w, S, ComplexPoint.from_complex(z0).z, policy))


def nl_laplace_residual(
    w: ComplexField,
    S: StructuralFunction,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """
    `Delta_K w` over the cells whose five point stencil stays inside the domain.

    Skipped cells are counted in `params["skipped_cells"]`.
    """
    centers = grid.centers
    step = policy.second(centers)
    eligible = grid.mask.copy()
    for offset in (step, -step, 1j * step, -1j * step):
        eligible &= grid.contains(centers + offset)
    skipped = grid.n_valid - int(np.count_nonzero(eligible))
    if skipped:
        logger.warning(f"nl_laplace_residual skipped {skipped} cell(s) near the boundary")
    residual = np.full(grid.size, INVALID)
    residual[eligible] = nonlinear_laplace_values(w, S, centers[eligible], policy)
    params = {
        "w": field_label(w),
        **S.params(),
        **policy.params(),
        "skipped_cells": skipped,
    }
    return build_report("nonlinear-laplace", SampledField(grid, residual, eligible), params)
