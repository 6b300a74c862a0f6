from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from structura.fields import (
    GridDomain,
    ResidualReport,
    SampledField,
    build_report,
    evaluate_field,
    field_label,
)
from structura.fields.sampled import INVALID
from structura.structure.structural import StructuralFunction
from structura.types import ComplexField, TArray, TNumber
from structura.wirtinger import DEFAULT_POLICY, StepPolicy, wirtinger_derivatives


@dataclass(frozen=True, eq=False)
class _Constant:
    value: complex

    @property
    def source(self) -> str:
        return repr(self.value)

    def __call__(self, z: TArray) -> Any:
        return np.full(np.shape(z), self.value, dtype=complex) if np.ndim(z) else self.value


def _as_field(c: ComplexField | TNumber) -> ComplexField:
    return c if callable(c) else _Constant(complex(c))


@dataclass(frozen=True, eq=False)
class RealCoefficients:
    """Coefficient fields `a, b, c, d` of the real system

    `u_x - v_y + a u + b v = 0`, `u_y + v_x + c u + d v = 0`.

    Each coefficient is a field of z with real values; plain numbers become constant
    fields.
    """

    a: ComplexField | TNumber
    b: ComplexField | TNumber
    c: ComplexField | TNumber
    d: ComplexField | TNumber

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _as_field(getattr(self, name)))

    def at(self, z: TArray) -> tuple[Any, Any, Any, Any]:
        """Real values `(a, b, c, d)` at `z`."""
        return tuple(  # type: ignore[return-value]
            np.real(evaluate_field(f, z)) for f in (self.a, self.b, self.c, self.d)
        )


@dataclass(frozen=True, eq=False)
class CbvCoefficients:
    """Coefficients of `C w_zbar + A w + B conj(w) = 0`; C defaults to 1."""

    A: ComplexField | TNumber
    B: ComplexField | TNumber
    C: ComplexField | TNumber = 1.0

    def __post_init__(self) -> None:
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, _as_field(getattr(self, name)))

    def at(self, z: TArray) -> tuple[Any, Any, Any]:
        return tuple(  # type: ignore[return-value]
            evaluate_field(f, z) for f in (self.A, self.B, self.C)
        )

    def params(self) -> dict:
        return {name: field_label(getattr(self, name)) for name in ("A", "B", "C")}


@dataclass(frozen=True, eq=False)
class _Derived:
    """One coefficient evaluated through a function of the kappa partials."""

    structure: StructuralFunction
    policy: StepPolicy
    combine: Callable[..., Any]
    source: str

    def __call__(self, z: TArray) -> Any:
        return self.combine(*self.structure.kappa_partials(z, self.policy))


def coefficients_from_structure(
    S: StructuralFunction, policy: StepPolicy = DEFAULT_POLICY
) -> RealCoefficients:
    """
    Real coefficients induced by K = 1 + kappa, kappa = alpha + i beta:
    `a = d = alpha_x - beta_y` and `c = -b = alpha_y + beta_x`.

    `a` and `d` (and `b` and `-c`) are evaluated through the same expression, so the
    identities `a = d`, `b = -c` hold exactly.

    Raises:
        ModeError: for a structural function not given in kappa form.
    """
    S._require_kappa("coefficients_from_structure")

    def diagonal(a_x: Any, a_y: Any, b_x: Any, b_y: Any) -> Any:
        return a_x - b_y

    def off_diagonal(a_x: Any, a_y: Any, b_x: Any, b_y: Any) -> Any:
        return a_y + b_x

    def negated(a_x: Any, a_y: Any, b_x: Any, b_y: Any) -> Any:
        return -(a_y + b_x)

    a = _Derived(S, policy, diagonal, "alpha_x-beta_y")
    c = _Derived(S, policy, off_diagonal, "alpha_y+beta_x")
    b = _Derived(S, policy, negated, "-(alpha_y+beta_x)")
    return RealCoefficients(a, b, c, a)


@dataclass(frozen=True, eq=False)
class _Combined:
    rc: RealCoefficients
    which: str

    @property
    def source(self) -> str:
        return {"A": "(a+d+i*c-i*b)/4", "B": "(a-d+i*c+i*b)/4"}[self.which]

    def __call__(self, z: TArray) -> Any:
        a, b, c, d = self.rc.at(z)
        if self.which == "A":
            return 0.25 * ((a + d) + 1j * (c - b))
        return 0.25 * ((a - d) + 1j * (c + b))


def cbv_from_real(rc: RealCoefficients) -> CbvCoefficients:
    """
    Complex coefficients of the real system: `A = (a + d + i c - i b)/4`,
    `B = (a - d + i c + i b)/4` and `C = 1`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.structure import RealCoefficients, cbv_from_real

    coeffs = cbv_from_real(RealCoefficients(1, 2, 3, 4))
    print(coeffs.at(0j))
    ```
    """
    return CbvCoefficients(_Combined(rc, "A"), _Combined(rc, "B"), 1.0)


def cbv_residual(
    w: ComplexField,
    coeffs: CbvCoefficients,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Residual field `C w_zbar + A w + B conj(w)` over the in-mask cells."""
    z = grid.centers[grid.mask]
    _, w_zbar = wirtinger_derivatives(w, z, policy)
    values = evaluate_field(w, z)
    A, B, C = coeffs.at(z)
    residual = np.full(grid.size, INVALID)
    residual[grid.mask] = C * w_zbar + A * values + B * np.conj(values)
    params = {"w": field_label(w), **coeffs.params(), **policy.params()}
    return build_report("cbv", SampledField(grid, residual), params)
