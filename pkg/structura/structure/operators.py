from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from structura.fields import ComplexPoint, evaluate_field
from structura.logger import get_logger
from structura.structure.structural import StructuralFunction
from structura.types import ComplexField, TArray, TNumber
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    WirtingerPair,
    partial_derivatives,
    wirtinger_derivatives,
)

logger = get_logger(__name__)


def k_transform(w: TNumber, K: TNumber) -> complex:
    """
    The K-transformation `w -> w K`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.structure import k_transform

    print(k_transform(1 + 2j, 3 + 4j))
    ```
    """
    return complex(w) * complex(K)


def k_transform_parts(u: float, v: float, k1: float, k2: float) -> tuple[float, float]:
    """Real and imaginary parts of the K-transform: `(k1 u - v k2, v k1 + u k2)`."""
    return k1 * u - v * k2, v * k1 + u * k2


def structural_derivatives(
    w: ComplexField, S: StructuralFunction, z: TArray, policy: StepPolicy = DEFAULT_POLICY
) -> tuple[Any, Any]:
    """Elementwise `(w_z + w K_z, w_zbar + w K_zbar)`."""
    w_z, w_zbar = wirtinger_derivatives(w, z, policy)
    K_z, K_zbar = S.derivatives(z, policy)
    values = evaluate_field(w, z)
    return w_z + values * K_z, w_zbar + values * K_zbar


def d_structural(
    w: ComplexField,
    S: StructuralFunction,
    z0: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
) -> WirtingerPair:
    """
    Structural Wirtinger derivatives `Dw/dz = w_z + w K_z` and `Dw/dzbar = w_zbar + w K_zbar`.

    The K terms act by multiplication. Derivatives of K are exact when `S` carries them,
    derivatives of `w` are central differences.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.structure import StructuralFunction, d_structural

    S = StructuralFunction.from_expression("exp(z*conj(z))")
    print(d_structural(lambda z: 1.0, S, 1.0).d_zbar)
    ```
    """
    z = ComplexPoint.from_complex(z0).z
    d_z, d_zbar = structural_derivatives(w, S, z, policy)
    return WirtingerPair(complex(d_z), complex(d_zbar))


@dataclass(frozen=True)
class ComplexOneForm:
    """`c_z dz + c_zbar dzbar`."""

    c_z: complex
    c_zbar: complex

    def __call__(self, dz: complex) -> complex:
        """Value on a tangent vector `dz`."""
        return self.c_z * dz + self.c_zbar * np.conj(dz)


def exterior_differential(
    w: ComplexField,
    S: StructuralFunction,
    z0: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
) -> ComplexOneForm:
    """`dw + w dK` split into its `dz` and `dzbar` components."""
    d_z, d_zbar = d_structural(w, S, z0, policy)
    return ComplexOneForm(d_z, d_zbar)


def dx_dy_operators(
    w: ComplexField,
    S: StructuralFunction,
    z0: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
) -> tuple[complex, complex]:
    """
    Real direction operators for K = 1 + kappa, kappa = alpha + i beta:
    `D_x w = w_x + w (alpha_x - beta_y)` and `D_y w = w_y + w (alpha_y + beta_x)`.

    `(D_x + i D_y) / 2` is `Dw/dzbar`; `(D_x - i D_y) / 2` is `Dw/dz` when kappa is real.

    Raises:
        ModeError: for a structural function not given in kappa form.
    """
    z = ComplexPoint.from_complex(z0).z
    p = S.kappa_partials(z, policy)
    w_x, w_y = partial_derivatives(w, z, policy.first(z))
    value = evaluate_field(w, z)
    D_x = w_x + value * (p.alpha_x - p.beta_y)
    D_y = w_y + value * (p.alpha_y + p.beta_x)
    return complex(D_x), complex(D_y)
