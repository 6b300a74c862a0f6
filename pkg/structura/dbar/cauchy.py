from __future__ import annotations

import numpy as np

from structura.errors import InvalidDomainError, InvalidParameterError
from structura.fields import ComplexPoint, Disk, GridDomain, SampledField, evaluate_field
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.types import ComplexField
from structura.wirtinger import DEFAULT_POLICY, StepPolicy, wirtinger_derivatives

from .pompeiu import QuadratureScheme

logger = get_logger(__name__)

BOUNDARY_POINTS = 1024


def cauchy_pompeiu_reconstruct(
    w: ComplexField,
    domain: GridDomain,
    zeta: ComplexPoint | complex,
    policy: StepPolicy = DEFAULT_POLICY,
    n_boundary: int = BOUNDARY_POINTS,
    scheme: QuadratureScheme | None = None,
) -> complex:
    """
    Recover `w(zeta)` inside a disk from the Cauchy-Pompeiu representation

    `w(zeta) = (1/(2 pi i)) contour w(z)/(z - zeta) dz - (1/pi) integral w_zbar/(z - zeta) dA`.

    The contour term uses the trapezoid rule on `n_boundary` equally spaced points of
    the circle, where it reads `(1/n) sum w(z_k) (z_k - c) / (z_k - zeta)`. The area term
    is the Cauchy transform of the numerical `w_zbar` on the grid.

    Arguments:
        w: Field to reconstruct; evaluated on the circle and at the cell centers.
        domain: Grid over a disk.
        zeta: In-mask cell center.
        policy: Steps of the `w_zbar` differences.
        n_boundary: Points on the circle.
        scheme: Quadrature settings of the area term.

    Raises:
        InvalidDomainError: if the grid does not cover a disk.
        InvalidTargetError: if `zeta` is not an in-mask cell center.
    """
    if not isinstance(domain.shape, Disk):
        raise InvalidDomainError("Cauchy-Pompeiu reconstruction needs a disk domain.")
    if n_boundary < 3:
        raise InvalidParameterError(f"Need at least 3 boundary points, got {n_boundary}.")
    target = domain.cell_index(zeta)
    z0 = domain.centers[target]
    centre, radius = domain.shape.center.z, domain.shape.radius
    theta = 2.0 * np.pi * np.arange(n_boundary) / n_boundary
    ring = radius * np.exp(1j * theta)
    boundary = np.mean(evaluate_field(w, centre + ring) * ring / (centre + ring - z0))

    _, w_zbar = wirtinger_derivatives(w, domain.centers[domain.mask], policy)
    density = np.full(domain.size, INVALID)
    density[domain.mask] = w_zbar
    scheme = scheme or QuadratureScheme()
    area = scheme.transform(SampledField(domain, density), [target])[0]
    logger.debug(f"Cauchy-Pompeiu at {z0}: contour {boundary:.6g}, area {area:.6g}")
    return complex(boundary + area)
