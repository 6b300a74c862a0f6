from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from structura.errors import NumericalFailureError
from structura.fields import (
    GridDomain,
    ResidualReport,
    SampledField,
    build_report,
    evaluate_field,
    evaluate_real_field,
    field_label,
)
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.structure.structural import StructuralFunction
from structura.types import ComplexField, HoloMode, RealField, TArray
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    partial_derivatives,
    wirtinger_derivatives,
)

logger = get_logger(__name__)

HOLO_OPERATOR = "structural-holomorphic"


def _on_mask(grid: GridDomain, values: Any) -> SampledField:
    out = np.full(grid.size, INVALID)
    out[grid.mask] = values
    return SampledField(grid, out)


def holo_residual(
    w: ComplexField,
    S: StructuralFunction,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
    mode: HoloMode | str = HoloMode.REDUCED,
) -> ResidualReport:
    """
    Residual of structural holomorphy over the in-mask cells of a grid.

    The `reduced` residual is `Dw/dzbar = w_zbar + w K_zbar`; the `full` residual keeps the
    factor K on the derivative, `K w_zbar + w K_zbar`. Cells where K vanishes are counted
    in `params["degenerate_cells"]`.

    Arguments:
        w: Candidate solution.
        S: Structural function.
        grid: Sampling grid.
        policy: Finite difference steps for `w` (and for K without exact derivatives).
        mode: `reduced` or `full`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import ExpressionField
    from structura.fields import ComplexPoint, Disk, make_grid
    from structura.structure import StructuralFunction, holo_residual

    grid = make_grid(Disk(ComplexPoint(0, 0), 1.0), 32)
    w = ExpressionField.from_text("exp(-conj(z))")
    report = holo_residual(w, StructuralFunction.from_expression("conj(z)"), grid)
    print(report.linf)
    ```
    """
    mode = HoloMode(mode)
    z = grid.centers[grid.mask]
    _, w_zbar = wirtinger_derivatives(w, z, policy)
    values = evaluate_field(w, z)
    _, K_zbar = S.derivatives(z, policy)
    if mode == HoloMode.FULL:
        residual = S(z) * w_zbar + values * K_zbar
    else:
        residual = w_zbar + values * K_zbar
    params = {
        "w": field_label(w),
        **S.params(),
        "mode": mode,
        **policy.params(),
        "degenerate_cells": S.degenerate_cells(z),
    }
    return build_report(HOLO_OPERATOR, _on_mask(grid, residual), params)


def real_cr_residual(
    u: RealField,
    v: RealField,
    alpha: RealField,
    beta: RealField,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
) -> tuple[ResidualReport, ResidualReport]:
    """
    Residuals of the real first order system of structural holomorphy for K = 1 + kappa,
    kappa = alpha + i beta and w = u + i v:

    - `v_x + u_y + v (alpha_x - beta_y) + u (beta_x + alpha_y)`
    - `u_x - v_y + u (alpha_x - beta_y) - v (beta_x + alpha_y)`

    All four inputs are real fields; every partial derivative is a central difference.
    """
    z = grid.centers[grid.mask]
    h = policy.first(z)

    def real(f: RealField) -> RealField:
        return lambda points: evaluate_real_field(f, points)

    u_x, u_y = (np.real(d) for d in partial_derivatives(real(u), z, h))
    v_x, v_y = (np.real(d) for d in partial_derivatives(real(v), z, h))
    a_x, a_y = (np.real(d) for d in partial_derivatives(real(alpha), z, h))
    b_x, b_y = (np.real(d) for d in partial_derivatives(real(beta), z, h))
    uu, vv = evaluate_real_field(u, z), evaluate_real_field(v, z)
    first = v_x + u_y + vv * (a_x - b_y) + uu * (b_x + a_y)
    second = u_x - v_y + uu * (a_x - b_y) - vv * (b_x + a_y)
    params = {
        "u": field_label(u),
        "v": field_label(v),
        "alpha": field_label(alpha),
        "beta": field_label(beta),
        **policy.params(),
    }
    return (
        build_report("real-cr-1", _on_mask(grid, first), params),
        build_report("real-cr-2", _on_mask(grid, second), params),
    )


@dataclass(frozen=True, eq=False)
class ConstructedSolution:
    """The field `Phi exp(-K)`, structural holomorphic whenever Phi is entire."""

    phi: ComplexField
    structure: StructuralFunction

    @property
    def source(self) -> str:
        return f"({field_label(self.phi)})*exp(-({field_label(self.structure.K)}))"

    def __call__(self, z: TArray) -> Any:
        with np.errstate(all="ignore"):
            values = evaluate_field(self.phi, z) * np.exp(-self.structure(z))
        if not np.all(np.isfinite(values)):
            bad = np.ravel(np.asarray(z))[np.flatnonzero(~np.isfinite(np.ravel(values)))[0]]
            raise NumericalFailureError("Overflow in exp(-K)", complex(bad))
        return values


def construct_solution(phi: ComplexField, S: StructuralFunction) -> ConstructedSolution:
    """
    Structural holomorphic field `w = Phi exp(-K)` built from an entire function Phi.

    The returned field is lazy; evaluating it where `exp(-K)` overflows raises
    `NumericalFailureError` at that point.
    """
    logger.debug(f"Constructing Phi*exp(-K) from {field_label(phi)} and {S.params()['K']}")
    return ConstructedSolution(phi, S)
