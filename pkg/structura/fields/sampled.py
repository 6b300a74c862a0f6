from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from structura.errors import InvalidParameterError, NumericalFailureError
from structura.fields.evaluation import evaluate_field
from structura.fields.grid import ComplexPoint, GridDomain
from structura.types import ComplexField

# Stored in cells that are not part of the field.
INVALID = complex(np.nan, np.nan)


@dataclass(frozen=True, eq=False)
class SampledField:
    """Complex samples at the cell centers of a grid, row-major.

    Cells outside `valid` (by default the grid mask) hold the `INVALID` sentinel and are
    ignored by norms and dumps.
    """

    grid: GridDomain
    values: np.ndarray
    valid: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex).ravel()
        if values.size != self.grid.size:
            raise InvalidParameterError(
                f"Expected {self.grid.size} samples for a {self.grid.nx}x{self.grid.ny} grid, "
                f"got {values.size}."
            )
        valid = self.grid.mask if self.valid is None else np.asarray(self.valid, dtype=bool)
        values = np.where(valid, values, INVALID)
        values.setflags(write=False)
        valid = valid.copy()
        valid.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "valid", valid)

    @property
    def n_valid(self) -> int:
        return int(np.count_nonzero(self.valid))

    def valid_values(self) -> np.ndarray:
        return self.values[self.valid]

    def valid_centers(self) -> np.ndarray:
        return self.grid.centers[self.valid]

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> SampledField:
        """Apply an elementwise function to the valid samples."""
        out = np.full(self.grid.size, INVALID)
        with np.errstate(all="ignore"):
            out[self.valid] = fn(self.valid_values())
        return SampledField(self.grid, out, self.valid)

    def __mul__(self, c: complex) -> SampledField:
        return self.map(lambda v: c * v)

    __rmul__ = __mul__

    def __sub__(self, other: SampledField) -> SampledField:
        if other.grid != self.grid:
            raise InvalidParameterError("Cannot subtract fields sampled on different grids.")
        valid = self.valid & other.valid
        return SampledField(self.grid, self.values - other.values, valid)


def sample_field(f: ComplexField, grid: GridDomain) -> SampledField:
    """
    Sample a field at the in-mask cell centers of a grid.

    Raises:
        NumericalFailureError: if `f` is non-finite at some center, carrying that point.
    """
    values = np.full(grid.size, INVALID)
    values[grid.mask] = evaluate_field(f, grid.centers[grid.mask])
    return SampledField(grid, values)


@dataclass(frozen=True)
class FieldNorm:
    """Discrete L^p norm value, `p = inf` for the maximum modulus."""

    p: float
    value: float


def norm_lp(sampled: SampledField, p: float = 2.0) -> float:
    """
    Midpoint-rule approximation of the L^p norm over the valid cells:
    `(sum |w|^p * cell_area)^(1/p)`, or `max |w|` for `p = inf`.
    """
    if not p >= 1:
        raise InvalidParameterError(f"Norm order must satisfy p >= 1, got {p}.")
    if sampled.n_valid == 0:
        raise InvalidParameterError("Cannot take the norm of a field without valid cells.")
    values = sampled.valid_values()
    if not np.all(np.isfinite(values)):
        bad = np.flatnonzero(~np.isfinite(values))[0]
        raise NumericalFailureError(
            "Non-finite sample in norm", complex(sampled.valid_centers()[bad])
        )
    modulus = np.abs(values)
    if math.isinf(p):
        return float(modulus.max())
    scale = modulus.max()
    if scale == 0:
        return 0.0
    # Scaling keeps |w|^p away from overflow for large p.
    total = np.sum((modulus / scale) ** p) * sampled.grid.cell_area
    return float(scale * total ** (1.0 / p))


def field_norm(sampled: SampledField, p: float = 2.0) -> FieldNorm:
    return FieldNorm(p, norm_lp(sampled, p))


def max_location(sampled: SampledField) -> tuple[ComplexPoint, float]:
    """Center and modulus of the valid cell with the largest modulus."""
    if sampled.n_valid == 0:
        raise InvalidParameterError("Field has no valid cells.")
    modulus = np.abs(sampled.valid_values())
    k = int(np.argmax(modulus))
    return ComplexPoint.from_complex(sampled.valid_centers()[k]), float(modulus[k])
