from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Iterator

import numpy as np

from structura.errors import InvalidParameterError
from structura.fields import ComplexPoint, GridDomain, SampledField, evaluate_field
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.types import ComplexField, TArray, WirtingerVariable

# Modules to be automatically added to the structura namespace
__all__ = [
    "StepPolicy",
    "WirtingerPair",
    "d2_cross",
    "d2_mixed",
    "d_wirtinger",
    "d_wirtinger_field",
    "partial_derivatives",
    "quarter_laplacian",
    "wirtinger_derivatives",
]

logger = get_logger(__name__)


@dataclass(frozen=True)
class StepPolicy:
    """Finite difference steps.

    Attributes:
        h1: Step of first derivatives.
        h2: Step of second derivatives.
        relative: Scale both steps by `max(1, |z|)` at the probed point.
    """

    h1: float = 1e-5
    h2: float = 1e-3
    relative: bool = True

    def __post_init__(self) -> None:
        for name in ("h1", "h2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"Step '{name}' must be positive, got {value}.")

    def _scale(self, z: TArray) -> Any:
        if not self.relative:
            return 1.0
        return np.maximum(1.0, np.abs(z))

    def first(self, z: TArray) -> Any:
        return self.h1 * self._scale(z)

    def second(self, z: TArray) -> Any:
        return self.h2 * self._scale(z)

    def params(self) -> dict:
        return {"h1": self.h1, "h2": self.h2, "relative": self.relative}


DEFAULT_POLICY = StepPolicy()


@dataclass(frozen=True)
class WirtingerPair:
    """The two Wirtinger derivatives of a field at a point."""

    d_z: complex
    d_zbar: complex

    def __iter__(self) -> Iterator[complex]:
        return iter((self.d_z, self.d_zbar))

    def __getitem__(self, wrt: WirtingerVariable | str) -> complex:
        return self.d_z if WirtingerVariable(wrt) == WirtingerVariable.Z else self.d_zbar


def _axis_difference(f: ComplexField, z: Any, step: Any, imaginary: bool) -> Any:
    # Divide by the representable distance between the probes, not by 2*step.
    offset = 1j * step if imaginary else step
    plus, minus = z + offset, z - offset
    width = np.imag(plus - minus) if imaginary else np.real(plus - minus)
    return (evaluate_field(f, plus) - evaluate_field(f, minus)) / width


def partial_derivatives(f: ComplexField, z: TArray, h: Any) -> tuple[Any, Any]:
    """
    Central differences `(f_x, f_y)` at one point or elementwise over an array.

    Arguments:
        f: Field to differentiate.
        z: Points.
        h: Step, a scalar or one step per point.
    """
    z = complex(z) if np.ndim(z) == 0 else np.asarray(z, dtype=complex)
    h = np.asarray(h, dtype=float)
    h = float(h) if h.ndim == 0 else h
    return _axis_difference(f, z, h, False), _axis_difference(f, z, h, True)


def wirtinger_derivatives(
    f: ComplexField, z: TArray, policy: StepPolicy = DEFAULT_POLICY
) -> tuple[Any, Any]:
    """`(f_z, f_zbar)` from central differences with step `policy.first(z)`."""
    f_x, f_y = partial_derivatives(f, z, policy.first(z))
    return 0.5 * (f_x - 1j * f_y), 0.5 * (f_x + 1j * f_y)


def quarter_laplacian(f: ComplexField, z: TArray, policy: StepPolicy = DEFAULT_POLICY) -> Any:
    """`(f_xx + f_yy) / 4` from the five point stencil with step `policy.second(z)`."""
    z = complex(z) if np.ndim(z) == 0 else np.asarray(z, dtype=complex)
    h = policy.second(z)
    centre = evaluate_field(f, z)
    ring = (
        evaluate_field(f, z + h)
        + evaluate_field(f, z - h)
        + evaluate_field(f, z + 1j * h)
        + evaluate_field(f, z - 1j * h)
    )
    return (ring - 4.0 * centre) / (4.0 * h * h)


def d_wirtinger(
    f: ComplexField, z0: ComplexPoint | complex, policy: StepPolicy = DEFAULT_POLICY
) -> WirtingerPair:
    """
    Numerical Wirtinger derivatives `f_z = (f_x - i f_y)/2` and `f_zbar = (f_x + i f_y)/2`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.wirtinger import d_wirtinger

    print(d_wirtinger(lambda z: z * z.conjugate(), 2 + 1j))
    ```
    """
    z = ComplexPoint.from_complex(z0).z
    d_z, d_zbar = wirtinger_derivatives(f, z, policy)
    logger.debug(f"d_wirtinger at {z} with h1={policy.h1}")
    return WirtingerPair(complex(d_z), complex(d_zbar))


def d2_mixed(
    f: ComplexField, z0: ComplexPoint | complex, policy: StepPolicy = DEFAULT_POLICY
) -> complex:
    """The mixed derivative `f_{z zbar}`, a quarter of the discrete Laplacian."""
    return complex(quarter_laplacian(f, ComplexPoint.from_complex(z0).z, policy))


def d_wirtinger_field(
    f: ComplexField, grid: GridDomain, policy: StepPolicy = DEFAULT_POLICY
) -> tuple[SampledField, SampledField]:
    """Per cell Wirtinger derivatives, returned as a `f_z` field and a `f_zbar` field."""
    d_z, d_zbar = np.full(grid.size, INVALID), np.full(grid.size, INVALID)
    centers = grid.centers[grid.mask]
    d_z[grid.mask], d_zbar[grid.mask] = wirtinger_derivatives(f, centers, policy)
    return SampledField(grid, d_z), SampledField(grid, d_zbar)


_SIGN = {WirtingerVariable.Z: -1.0, WirtingerVariable.ZBAR: 1.0}


def d2_cross(
    f: Callable[[complex, complex], complex],
    a: complex,
    b: complex,
    wrt_a: WirtingerVariable | str = WirtingerVariable.Z,
    wrt_b: WirtingerVariable | str = WirtingerVariable.ZBAR,
    policy: StepPolicy = DEFAULT_POLICY,
) -> complex:
    """
    Mixed Wirtinger derivative of `f(a, b)` across its two complex arguments.

    Each Wirtinger operator is `(d/dx + s i d/dy) / 2` with `s = -1` for `z` and `s = 1`
    for `zbar`; the four real mixed partials come from nested central differences with
    step `policy.second`.
    """
    s_a, s_b = _SIGN[WirtingerVariable(wrt_a)], _SIGN[WirtingerVariable(wrt_b)]
    ha, hb = policy.second(a), policy.second(b)

    def mixed(da: complex, db: complex) -> complex:
        values = [
            sa * sb * complex(f(a + sa * da, b + sb * db))
            for sa in (1.0, -1.0)
            for sb in (1.0, -1.0)
        ]
        return sum(values) / (4.0 * abs(da) * abs(db))

    xx = mixed(ha, hb)
    xy = mixed(ha, 1j * hb)
    yx = mixed(1j * ha, hb)
    yy = mixed(1j * ha, 1j * hb)
    return 0.25 * (xx + 1j * s_b * xy + 1j * s_a * yx - s_a * s_b * yy)
