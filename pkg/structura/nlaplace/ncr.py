from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from structura.errors import StructuraException
from structura.fields import (
    ComplexPoint,
    GridDomain,
    Rectangle,
    ResidualReport,
    SampledField,
    build_report,
    evaluate_real_field,
    field_label,
    make_grid,
)
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.structure import StructuralFunction
from structura.types import NcrConvention, RealField
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    partial_derivatives,
    quarter_laplacian,
)

logger = get_logger(__name__)

# Relative step of the (u, v) differences of f and g.
UV_STEP = 1e-5

RealPairFunction = Callable[[Any, Any], Any]


def _call(fn: RealPairFunction, u: Any, v: Any) -> Any:
    try:
        values = fn(u, v)
        return np.broadcast_to(np.asarray(values, dtype=float), np.shape(u)).copy()
    except StructuraException:
        raise
    except (TypeError, ValueError):
        return np.vectorize(lambda a, b: float(fn(a, b)), otypes=[float])(u, v)


@dataclass(frozen=True, eq=False)
class NcrPair:
    """Real functions `f(u, v)` and `g(u, v)` of the nonlinear Cauchy-Riemann system

    `u_y = -v_x + f(u, v)`, `u_x = v_y + g(u, v)`.

    Both are called elementwise on numpy arrays; scalar only callables are vectorised.
    Partials are central differences with step `UV_STEP * max(1, |u|, |v|)`.
    """

    f: RealPairFunction
    g: RealPairFunction
    label: str = "f,g"

    @classmethod
    def linear(cls, a: float, b: float) -> NcrPair:
        """`f = a u + b v`, `g = -b u + a v`, which satisfy `f_u = g_v` and `f_v = -g_u`."""
        return cls(
            lambda u, v: a * u + b * v, lambda u, v: -b * u + a * v, f"linear({a!r},{b!r})"
        )

    @classmethod
    def from_structure(
        cls,
        S: StructuralFunction,
        z0: ComplexPoint | complex,
        policy: StepPolicy = DEFAULT_POLICY,
    ) -> NcrPair:
        """The pair induced by K = 1 + kappa with coefficients frozen at `z0`."""
        z = ComplexPoint.from_complex(z0).z
        p, q, r = _structure_coefficients(S, z, policy)
        return cls(
            lambda u, v: v * p - u * q,
            lambda u, v: v * q - u * r,
            f"structure({S.params()['K']}@{z})",
        )

    def values(self, u: Any, v: Any) -> tuple[Any, Any]:
        return _call(self.f, u, v), _call(self.g, u, v)

    def partials(self, u: Any, v: Any) -> tuple[Any, Any, Any, Any]:
        """`(f_u, f_v, g_u, g_v)` at `(u, v)`."""
        u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
        h = UV_STEP * np.maximum(1.0, np.maximum(np.abs(u), np.abs(v)))
        out = []
        for fn in (self.f, self.g):
            up, um = u + h, u - h
            vp, vm = v + h, v - h
            out.append((_call(fn, up, v) - _call(fn, um, v)) / (up - um))
            out.append((_call(fn, u, vp) - _call(fn, u, vm)) / (vp - vm))
        return out[0], out[1], out[2], out[3]

    def energy_gradient(self, u: Any, v: Any) -> tuple[Any, Any]:
        """`(1/2) d/du (f^2 + g^2)` and `(1/2) d/dv (f^2 + g^2)`."""

        def energy(a: Any, b: Any) -> Any:
            f, g = self.values(a, b)
            return 0.5 * (f * f + g * g)

        return NcrPair(energy, energy).partials(u, v)[:2]


def _structure_coefficients(
    S: StructuralFunction, z: complex, policy: StepPolicy
) -> tuple[float, float, float]:
    """`(beta_y - alpha_x, beta_x + alpha_y, alpha_x - beta_y)` at `z`."""
    p = S.kappa_partials(z, policy)
    return (
        float(p.beta_y - p.alpha_x),
        float(p.beta_x + p.alpha_y),
        float(p.alpha_x - p.beta_y),
    )


def fg_from_structure(
    S: StructuralFunction,
    u: float,
    v: float,
    z0: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
) -> tuple[float, float]:
    """
    Nonlinear terms induced by K = 1 + kappa, kappa = alpha + i beta, with the
    coefficients taken at `z0`:

    - `f = v (beta_y - alpha_x) - u (beta_x + alpha_y)`
    - `g = v (beta_x + alpha_y) - u (alpha_x - beta_y)`

    Raises:
        ModeError: for a structural function not given in kappa form.
    """
    p, q, r = _structure_coefficients(S, ComplexPoint.from_complex(z0).z, policy)
    return v * p - u * q, v * q - u * r


def _real_field_values(u: RealField, z: np.ndarray) -> np.ndarray:
    return np.asarray(evaluate_real_field(u, z), dtype=float)


def _real(f: RealField) -> RealField:
    return lambda points: evaluate_real_field(f, points)


def _on_mask(grid: GridDomain, cells: np.ndarray, values: Any) -> SampledField:
    out = np.full(grid.size, INVALID)
    out[cells] = values
    return SampledField(grid, out, cells)


def ncr_residual(
    u: RealField,
    v: RealField,
    pair: NcrPair,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
) -> tuple[ResidualReport, ResidualReport]:
    """
    Residuals `u_y + v_x - f(u, v)` and `u_x - v_y - g(u, v)` over the in-mask cells,
    with `f` and `g` composed with the sampled `(u, v)`.
    """
    z = grid.centers[grid.mask]
    h = policy.first(z)
    u_x, u_y = (np.real(d) for d in partial_derivatives(_real(u), z, h))
    v_x, v_y = (np.real(d) for d in partial_derivatives(_real(v), z, h))
    f, g = pair.values(_real_field_values(u, z), _real_field_values(v, z))
    params = {"u": field_label(u), "v": field_label(v), "pair": pair.label, **policy.params()}
    return (
        build_report("ncr-1", _on_mask(grid, grid.mask, u_y + v_x - f), params),
        build_report("ncr-2", _on_mask(grid, grid.mask, u_x - v_y - g), params),
    )


def fg_cr_check(
    pair: NcrPair,
    box: Rectangle,
    n: int = 32,
    convention: NcrConvention | str = NcrConvention.STANDARD,
) -> tuple[ResidualReport, ResidualReport]:
    """
    Check the identities between `f` and `g` on an `n x n` grid over a box of the
    `(u, v)` plane (cell center `u + i v`).

    `standard` checks `f_u - g_v` and `f_v + g_u`; `swapped` checks `f_v - g_u` and
    `f_u + g_v`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.fields import Rectangle
    from structura.nlaplace import NcrPair, fg_cr_check

    pair = NcrPair(lambda u, v: v, lambda u, v: u)
    first, second = fg_cr_check(pair, Rectangle(-1, 1, -1, 1), 8, "standard")
    print(first.linf, second.linf)
    ```
    """
    convention = NcrConvention(convention)
    grid = make_grid(box, n)
    uv = grid.centers
    f_u, f_v, g_u, g_v = pair.partials(uv.real, uv.imag)
    if convention == NcrConvention.STANDARD:
        first, second = f_u - g_v, f_v + g_u
    else:
        first, second = f_v - g_u, f_u + g_v
    params = {"pair": pair.label, "convention": convention, "uv_step": UV_STEP}
    cells = np.ones(grid.size, dtype=bool)
    return (
        build_report(f"fg-{convention}-1", _on_mask(grid, cells, first), params),
        build_report(f"fg-{convention}-2", _on_mask(grid, cells, second), params),
    )


def laplace_rhs_check(
    u: RealField,
    v: RealField,
    pair: NcrPair,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
) -> tuple[ResidualReport, ResidualReport]:
    """
    Residuals `Laplacian(u) - (1/2) d/du (f^2 + g^2)` and
    `Laplacian(v) - (1/2) d/dv (f^2 + g^2)` with the right hand sides taken at the
    sampled `(u, v)`. Laplacians use the five point stencil with step `policy.second`.
    """
    z = grid.centers[grid.mask]
    lap_u = 4.0 * np.real(quarter_laplacian(_real(u), z, policy))
    lap_v = 4.0 * np.real(quarter_laplacian(_real(v), z, policy))
    grad_u, grad_v = pair.energy_gradient(_real_field_values(u, z), _real_field_values(v, z))
    params = {"u": field_label(u), "v": field_label(v), "pair": pair.label, **policy.params()}
    return (
        build_report("laplace-rhs-u", _on_mask(grid, grid.mask, lap_u - grad_u), params),
        build_report("laplace-rhs-v", _on_mask(grid, grid.mask, lap_v - grad_v), params),
    )
