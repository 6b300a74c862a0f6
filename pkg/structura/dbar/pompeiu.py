from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable

import numpy as np

from structura.errors import InvalidParameterError
from structura.fields import (
    ComplexPoint,
    GridDomain,
    ResidualReport,
    SampledField,
    build_report,
    evaluate_field,
    field_label,
    sample_field,
)
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.types import ComplexField, TArray
from structura.wirtinger import DEFAULT_POLICY, StepPolicy, wirtinger_derivatives

logger = get_logger(__name__)

# Default interior margin of `verify_dbar`, as a fraction of the domain inradius.
MARGIN_FRACTION = 0.1


@dataclass(frozen=True)
class QuadratureScheme:
    """Midpoint rule for the Cauchy transform `-(1/pi) sum phi(c) / (c - zeta) dA`.

    The transform is only evaluated at in-mask cell centers. The cell containing the
    target is left out of the sum; over that cell the integral of `1/(c - zeta)`
    vanishes by symmetry.

    Attributes:
        batch_size: Number of targets summed together in one vectorised pass.
    """

    batch_size: int = 64

    rule = "midpoint"
    singular = "exclude-target-cell"

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise InvalidParameterError(f"Batch size must be positive, got {self.batch_size}.")

    def transform(self, density: SampledField, targets: Iterable[int]) -> np.ndarray:
        """
        Cauchy transform of `density` at the centers of the cells `targets`.

        With `d(xi bar) ^ d(xi) = 2i dx ^ dy`, the area form of the transform is
        `h(zeta) = -(1/pi) sum_{c != zeta} density(c) / (c - zeta) * cell_area`.
        """
        grid = density.grid
        targets = np.asarray(list(targets), dtype=int)
        sources = grid.centers[density.valid]
        weights = density.valid_values() * (-grid.cell_area / math.pi)
        out = np.empty(targets.size, dtype=complex)
        for start in range(0, targets.size, self.batch_size):
            batch = targets[start : start + self.batch_size]
            diff = sources[None, :] - grid.centers[batch][:, None]
            with np.errstate(divide="ignore", invalid="ignore"):
                kernel = np.where(diff == 0, 0.0, 1.0 / diff)
            out[start : start + batch.size] = kernel @ weights
        return out

    def params(self) -> dict:
        return {"rule": self.rule, "singular": self.singular}


@dataclass(frozen=True, eq=False)
class PompeiuSolution:
    """Cauchy transform of a source field, evaluated at cell centers on demand.

    Values are computed for the requested cells only and cached; `values` fills the
    whole grid. The cache is guarded by a lock, so one solution can be shared between
    threads and each cell is computed once.

    Attributes:
        phi: The source field.
        grid: Grid whose in-mask cells carry the quadrature.
        scheme: Quadrature settings.
    """

    phi: ComplexField
    grid: GridDomain
    scheme: QuadratureScheme = field(default_factory=QuadratureScheme)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)
    _cache: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_cache", np.full(self.grid.size, INVALID))

    @cached_property
    def density(self) -> SampledField:
        return sample_field(self.phi, self.grid)

    @property
    def source(self) -> str:
        return f"pompeiu({field_label(self.phi)})"

    def at_cells(self, cells: Iterable[int]) -> np.ndarray:
        """Values at the given in-mask cell indices."""
        cells = np.asarray(list(cells), dtype=int)
        with self._lock:
            missing = np.unique(cells[np.isnan(self._cache[cells].real)])
            if missing.size:
                logger.debug(f"Cauchy transform at {missing.size} cell(s)")
                self._cache[missing] = self.scheme.transform(self.density, missing)
            return self._cache[cells].copy()

    @property
    def values(self) -> SampledField:
        cells = np.flatnonzero(self.grid.mask)
        out = np.full(self.grid.size, INVALID)
        out[cells] = self.at_cells(cells)
        return SampledField(self.grid, out)

    def __call__(self, z: TArray) -> Any:
        """Values at cell centers `z`; other points raise `InvalidTargetError`."""
        points = np.atleast_1d(np.asarray(z, dtype=complex))
        cells = [self.grid.cell_index(complex(p)) for p in points.ravel()]
        values = self.at_cells(cells).reshape(points.shape)
        return complex(values[0]) if np.ndim(z) == 0 else values


def pompeiu_solve(
    phi: ComplexField,
    domain: GridDomain,
    zeta: ComplexPoint | complex,
    scheme: QuadratureScheme | None = None,
) -> complex:
    """
    Value at `zeta` of a solution `h` of `dh/dzbar = phi`, the Cauchy transform
    `h(zeta) = -(1/pi) integral phi(xi) / (xi - zeta) dA(xi)` over the domain.

    Arguments:
        phi: Right hand side.
        domain: Grid carrying the midpoint quadrature.
        zeta: Target; must be an in-mask cell center.
        scheme: Quadrature settings.

    Raises:
        InvalidTargetError: if `zeta` is not an in-mask cell center.
        NumericalFailureError: if `phi` is not finite on the domain.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.dbar import pompeiu_solve
    from structura.fields import ComplexPoint, Disk, make_grid

    grid = make_grid(Disk(ComplexPoint(0, 0), 1.0), 64)
    zeta = complex(grid.centers[grid.size // 2 + 40])
    print(zeta, pompeiu_solve(lambda z: 1.0, grid, zeta))
    ```
    """
    k = domain.cell_index(zeta)
    return complex(PompeiuSolution(phi, domain, scheme or QuadratureScheme()).at_cells([k])[0])


def _neighbour_residual(
    h: PompeiuSolution, phi: ComplexField, grid: GridDomain, eligible: np.ndarray
) -> np.ndarray:
    east, west, north, south = grid.neighbours()
    cells = np.flatnonzero(eligible)
    needed = np.unique(np.concatenate([east[cells], west[cells], north[cells], south[cells]]))
    values = np.full(grid.size, INVALID)
    values[needed] = h.at_cells(needed)
    h_x = (values[east[cells]] - values[west[cells]]) / (2.0 * grid.dx)
    h_y = (values[north[cells]] - values[south[cells]]) / (2.0 * grid.dy)
    return 0.5 * (h_x + 1j * h_y) - evaluate_field(phi, grid.centers[cells])


def verify_dbar(
    h: ComplexField | PompeiuSolution,
    phi: ComplexField,
    grid: GridDomain,
    policy: StepPolicy = DEFAULT_POLICY,
    margin: float | None = None,
) -> ResidualReport:
    """
    Residual `h_zbar - phi` over interior cells.

    For a `PompeiuSolution` on the same grid, `h_zbar` comes from central differences
    between neighbouring cell centers and a cell is used only if its four neighbours
    are in the mask. For any other field the probes `z +- h1` must stay in the domain.
    Cells closer than `margin` to the boundary are left out as well; by default
    `margin` is `MARGIN_FRACTION` times the inradius of the domain, and `margin=0`
    keeps every eligible cell. Skipped cells are counted in `params["skipped_cells"]`.
    """
    if margin is None:
        margin = MARGIN_FRACTION * grid.inradius
    if not margin >= 0:
        raise InvalidParameterError(f"Margin must be non-negative, got {margin}.")
    centers = grid.centers
    eligible = grid.mask & (grid.distance_to_boundary(centers) >= margin)
    residual = np.full(grid.size, INVALID)
    if isinstance(h, PompeiuSolution) and h.grid == grid:
        neighbours = grid.neighbours()
        inside = np.all(neighbours >= 0, axis=0)
        inside[inside] = np.all(grid.mask[neighbours[:, inside]], axis=0)
        eligible &= inside
        residual[eligible] = _neighbour_residual(h, phi, grid, eligible)
        differences = "neighbour-cells"
    else:
        step = policy.first(centers)
        for offset in (step, -step, 1j * step, -1j * step):
            eligible &= grid.contains(centers + offset)
        z = centers[eligible]
        _, h_zbar = wirtinger_derivatives(h, z, policy)
        residual[eligible] = h_zbar - evaluate_field(phi, z)
        differences = "central-probes"
    skipped = grid.n_valid - int(np.count_nonzero(eligible))
    if skipped:
        logger.warning(f"verify_dbar skipped {skipped} cell(s) near the boundary")
    params = {
        "h": field_label(h),
        "phi": field_label(phi),
        "differences": differences,
        "margin": margin,
        "skipped_cells": skipped,
        **policy.params(),
    }
    return build_report("dbar", SampledField(grid, residual, eligible), params)
