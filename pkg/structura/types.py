from __future__ import annotations

from enum import Enum
from typing import Any, Callable, Sequence, Union

import numpy as np

TNumber = Union[int, float, complex]
"""Union of python number types."""

TArray = Union[complex, np.ndarray]
"""A single complex value or an array of them; every field accepts both."""

ComplexField = Callable[[Any], Any]
"""An evaluatable map z -> w(z). Plays the role of w, K, kappa, Phi and phi."""

RealField = Callable[[Any], Any]
"""A field whose values are real; complex results are reduced to their real part."""

MultiField = Callable[[Sequence[complex]], complex]
"""A field of several complex variables, called with a tuple (z^1, ..., z^n)."""

# Modules to be automatically added to the structura namespace
__all__ = [
    "DerivativeSource",
    "DomainShape",
    "FieldCombination",
    "HoloMode",
    "NcrConvention",
    "ReportFormat",
    "StructureMode",
    "WirtingerVariable",
]  # type: ignore


class StrEnum(str, Enum):
    def __str__(self) -> str:
        """Used when dumping enum fields in a schema."""
        ret: str = self.value
        return ret

    @classmethod
    def list(cls) -> list[str]:
        return list(map(lambda c: c.value, cls))  # type: ignore


class DomainShape(StrEnum):
    """Shape of a grid domain."""

    RECTANGLE = "rect"
    """Axis aligned rectangle."""
    DISK = "disk"
    """Disk sampled on its bounding square with a containment mask."""


class WirtingerVariable(StrEnum):
    """Variable of a Wirtinger derivative."""

    Z = "z"
    """Differentiate with respect to z."""
    ZBAR = "zbar"
    """Differentiate with respect to conj(z)."""


class HoloMode(StrEnum):
    """Residual form used when checking structural holomorphy."""

    REDUCED = "reduced"
    """The structural derivative w_zbar + w K_zbar."""
    FULL = "full"
    """The full K-transformed form K w_zbar + w K_zbar."""


class NcrConvention(StrEnum):
    """Sign convention for the identities between the nonlinear terms f and g."""

    STANDARD = "standard"
    """f_u = g_v and f_v = -g_u."""
    SWAPPED = "swapped"
    """f_v = g_u and f_u = -g_v."""


class DerivativeSource(StrEnum):
    """Where the derivatives of a structural function come from."""

    SYMBOLIC = "symbolic"
    """Exact derivatives of an expression."""
    NUMERIC = "numeric"
    """Central finite differences."""


class StructureMode(StrEnum):
    """How a structural function was specified."""

    GENERAL = "general"
    """An arbitrary K."""
    KAPPA = "kappa"
    """K = 1 + kappa with kappa = alpha + i beta."""


class ReportFormat(StrEnum):
    """Artifact formats emitted for residual reports."""

    JSON = "json"
    """Report summary."""
    CSV = "csv"
    """Per-cell field dump."""


class FieldCombination(StrEnum):
    """How per-coordinate factors are combined into a field of several variables."""

    PRODUCT = "product"
    """w(z^1, z^2) = w_1(z^1) w_2(z^2)."""
    SUM = "sum"
    """w(z^1, z^2) = w_1(z^1) + w_2(z^2)."""
