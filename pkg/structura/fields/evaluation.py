from __future__ import annotations

from typing import Any

import numpy as np

from structura.errors import NumericalFailureError, StructuraException
from structura.types import ComplexField, RealField, TArray


def _first_bad(values: np.ndarray, z: np.ndarray) -> complex:
    bad = np.flatnonzero(~np.isfinite(values))
    return complex(z.ravel()[bad[0]])


def _pointwise(f: ComplexField, z: np.ndarray) -> np.ndarray:
    out = np.empty(z.size, dtype=complex)
    for k, zk in enumerate(z.ravel()):
        try:
            out[k] = complex(f(complex(zk)))
        except (ArithmeticError, ValueError) as e:
            raise NumericalFailureError(f"Field evaluation failed ({e})", complex(zk)) from e
    return out.reshape(z.shape)


def evaluate_field(f: ComplexField, z: TArray) -> Any:
    """
    Evaluate a field at one point or at an array of points.

    The field is first called with the whole array; callables that cannot handle arrays
    (or that return something of the wrong shape) are evaluated point by point.
    Every value must be finite.

    Returns:
        A complex for scalar input, a complex array of the same shape otherwise.

    Raises:
        NumericalFailureError: carrying the first point with a non-finite value.
    """
    scalar = np.ndim(z) == 0
    za = np.asarray(z, dtype=complex)
    try:
        with np.errstate(all="ignore"):
            raw = f(complex(za) if scalar else za)
        values = np.broadcast_to(np.asarray(raw, dtype=complex), za.shape).copy()
    except StructuraException:
        raise
    except (TypeError, ValueError, ArithmeticError):
        values = _pointwise(f, za)
    if not np.all(np.isfinite(values)):
        raise NumericalFailureError("Non-finite field value", _first_bad(values, za))
    return complex(values) if scalar else values


def evaluate_real_field(f: RealField, z: TArray) -> Any:
    """Evaluate a real valued field; the imaginary part of the result is discarded."""
    values = evaluate_field(f, z)
    return float(np.real(values)) if np.ndim(values) == 0 else np.real(values)


def field_label(f: Any) -> str:
    """Text recorded in reports for a field: its source expression or its name."""
    source = getattr(f, "source", None)
    if isinstance(source, str):
        return source
    return str(getattr(f, "__qualname__", type(f).__name__))
