from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import pytest
from metrics import (  # type: ignore
    ATOL_HOLO,
    CAUCHY_CONJ_ACCEPTANCE,
    CAUCHY_SMOOTH_ACCEPTANCE,
    CONVERGENCE_FACTOR,
    DBAR_POINT_ACCEPTANCE,
    DBAR_RESIDUAL_ACCEPTANCE,
)

from structura.dbar import (
    PompeiuSolution,
    QuadratureScheme,
    cauchy_pompeiu_reconstruct,
    pompeiu_solve,
    verify_dbar,
)
from structura.errors import InvalidDomainError, InvalidParameterError, InvalidTargetError
from structura.expr import ExpressionField
from structura.fields import (
    ComplexPoint,
    Disk,
    GridDomain,
    Rectangle,
    SampledField,
    make_grid,
)
from structura.wirtinger import d_wirtinger

TARGETS = [0.0, 0.3 + 0.1j, -0.25 + 0.2j, 0.1 - 0.4j, -0.35 - 0.3j]


def bump(z: np.ndarray) -> np.ndarray:
    """(1 - 4|z|^2)^3 inside |z| < 1/2, zero outside."""
    r2 = np.abs(z) ** 2
    return np.where(r2 < 0.25, (1.0 - 4.0 * r2) ** 3, 0.0)


def bump_transform(zeta: complex) -> complex:
    """Exact Cauchy transform of `bump`."""
    r2 = abs(zeta) ** 2
    inner = (1.0 - 4.0 * r2) ** 4 if r2 < 0.25 else 0.0
    return (1.0 - inner) / (16.0 * zeta)


def nearest_center(grid: GridDomain, z: complex) -> complex:
    inside = grid.centers[grid.mask]
    return complex(inside[np.argmin(np.abs(inside - z))])


@pytest.mark.parametrize("nx", [130, 256])
def test_transform_of_one_is_conjugate(unit_disk: Disk, nx: int) -> None:
    grid = make_grid(unit_disk, nx)
    tolerance = DBAR_POINT_ACCEPTANCE if nx >= 256 else 2.5 * DBAR_POINT_ACCEPTANCE
    for target in TARGETS:
        zeta = nearest_center(grid, target)
        assert abs(pompeiu_solve(lambda z: 1.0, grid, zeta) - np.conj(zeta)) <= tolerance


def test_transform_converges_under_refinement(unit_disk: Disk) -> None:
    errors = []
    for nx in (64, 128, 256):
        grid = make_grid(unit_disk, nx)
        solution = PompeiuSolution(bump, grid)
        zetas = [nearest_center(grid, t) for t in TARGETS[1:]]
        values = solution.at_cells([grid.cell_index(z) for z in zetas])
        errors.append(max(abs(v - bump_transform(z)) for v, z in zip(values, zetas)))
    assert errors[2] < 1e-2
    assert errors[0] / errors[1] >= CONVERGENCE_FACTOR
    assert errors[1] / errors[2] >= CONVERGENCE_FACTOR


def test_transform_of_z(unit_disk: Disk) -> None:
    grid = make_grid(unit_disk, 256)
    for target in TARGETS:
        zeta = nearest_center(grid, target)
        h = pompeiu_solve(lambda z: z, grid, zeta)
        assert abs(h - (abs(zeta) ** 2 - 1.0)) <= DBAR_POINT_ACCEPTANCE


def test_transform_is_linear(small_disk_grid: GridDomain) -> None:
    alpha, beta = 0.7 - 1.2j, -0.4 + 0.3j
    cells = np.flatnonzero(small_disk_grid.mask)
    first = PompeiuSolution(bump, small_disk_grid).at_cells(cells)
    second = PompeiuSolution(lambda z: z * np.conj(z), small_disk_grid).at_cells(cells)
    combined = PompeiuSolution(
        lambda z: alpha * bump(z) + beta * z * np.conj(z), small_disk_grid
    ).at_cells(cells)
    assert np.allclose(combined, alpha * first + beta * second, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("phi", ["1", "z", "exp(z)"])
def test_dbar_integrand_of_cut_off_solution(phi: str) -> None:
    # w = chi * Phi * exp(-kappa) with chi = 1 on |z| <= 1/2 and chi = 0 on |z| >= 0.9
    def cutoff(z: np.ndarray) -> np.ndarray:
        t = np.clip((np.abs(z) - 0.5) / 0.4, 0.0, 1.0)
        rise = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        fall = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
        return fall / (rise + fall)

    kappa = ExpressionField.from_text("0.3*conj(z)+0.2*z*conj(z)")
    Phi = ExpressionField.from_text(phi)

    def w(z: np.ndarray) -> np.ndarray:
        return cutoff(z) * Phi(z) * np.exp(-kappa(z))

    for z0 in [0j, 0.2 + 0.1j, -0.3 + 0.25j, 0.1 - 0.4j]:
        integrand = w(np.asarray(z0, dtype=complex)) * kappa.d_zbar(z0)
        assert abs(integrand + d_wirtinger(w, z0).d_zbar) <= ATOL_HOLO


def test_verify_dbar_of_compact_source(disk_grid: GridDomain) -> None:
    report = verify_dbar(PompeiuSolution(bump, disk_grid), bump, disk_grid)
    assert report.operator == "dbar"
    assert report.params["differences"] == "neighbour-cells"
    assert report.params["skipped_cells"] > 0
    assert report.linf <= DBAR_POINT_ACCEPTANCE


@pytest.mark.parametrize(
    "shape, margin",
    [
        (Disk(ComplexPoint(0.0, 0.0), 1.0), 0.1),
        (Disk(ComplexPoint(1.0, -1.0), 2.0), 0.2),
        (Rectangle(0.0, 1.0, 0.0, 3.0), 0.05),
    ],
)
def test_verify_dbar_default_margin(shape: Disk | Rectangle, margin: float) -> None:
    grid = make_grid(shape, 64)
    report = verify_dbar(PompeiuSolution(bump, grid), bump, grid)
    assert report.params["margin"] == pytest.approx(margin)
    assert np.all(grid.distance_to_boundary(report.field.valid_centers()) >= margin)
    everything = verify_dbar(PompeiuSolution(bump, grid), bump, grid, margin=0)
    assert everything.params["margin"] == 0
    assert everything.params["skipped_cells"] < report.params["skipped_cells"]


def test_verify_dbar_with_margin(disk_grid: GridDomain) -> None:
    report = verify_dbar(PompeiuSolution(lambda z: 1.0, disk_grid), lambda z: 1.0, disk_grid,
                         margin=0.5)
    assert report.params["margin"] == 0.5
    assert np.all(np.abs(report.field.valid_centers()) <= 0.5)
    assert report.linf <= 2 * DBAR_RESIDUAL_ACCEPTANCE


@pytest.mark.slow
def test_verify_dbar_of_constant_source_converges(unit_disk: Disk) -> None:
    errors = []
    for nx in (64, 128, 256):
        grid = make_grid(unit_disk, nx)
        report = verify_dbar(PompeiuSolution(lambda z: 1.0, grid), lambda z: 1.0, grid)
        assert report.params["margin"] == pytest.approx(0.1)
        errors.append(report.linf)
    assert errors[2] <= DBAR_RESIDUAL_ACCEPTANCE
    assert errors[0] / errors[1] >= CONVERGENCE_FACTOR
    assert errors[1] / errors[2] >= CONVERGENCE_FACTOR


@dataclass(frozen=True)
class CountingScheme(QuadratureScheme):
    computed: list = field(default_factory=list)

    def transform(self, density: SampledField, targets: Iterable[int]) -> np.ndarray:
        targets = list(targets)
        self.computed.extend(int(k) for k in targets)
        return super().transform(density, targets)


def test_solution_is_shared_between_threads(small_disk_grid: GridDomain) -> None:
    scheme = CountingScheme(batch_size=8)
    solution = PompeiuSolution(bump, small_disk_grid, scheme)
    cells = np.flatnonzero(small_disk_grid.mask)
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: solution.at_cells(cells), range(8)))
    assert sorted(scheme.computed) == sorted(int(k) for k in cells)
    for values in results:
        assert np.array_equal(values, results[0])
    expected = PompeiuSolution(bump, small_disk_grid, QuadratureScheme(batch_size=8))
    assert np.allclose(results[0], expected.at_cells(cells), rtol=1e-13, atol=1e-15)


def test_verify_dbar_of_closed_form(disk_grid: GridDomain) -> None:
    h = ExpressionField.from_text("conj(z) + z^2")
    report = verify_dbar(h, lambda z: 1.0, disk_grid)
    assert report.params["differences"] == "central-probes"
    assert report.linf <= 1e-8


def test_verify_dbar_rejects_negative_margin(small_disk_grid: GridDomain) -> None:
    with pytest.raises(InvalidParameterError):
        verify_dbar(lambda z: z, lambda z: 0.0, small_disk_grid, margin=-0.1)


def test_solution_evaluation(small_disk_grid: GridDomain) -> None:
    solution = PompeiuSolution(lambda z: 1.0, small_disk_grid)
    zeta = nearest_center(small_disk_grid, 0.2 + 0.2j)
    assert solution(zeta) == pompeiu_solve(lambda z: 1.0, small_disk_grid, zeta)
    values = solution.values
    assert values.n_valid == small_disk_grid.n_valid
    assert values.values[small_disk_grid.cell_index(zeta)] == solution(zeta)
    assert solution.source.startswith("pompeiu(")
    with pytest.raises(InvalidTargetError):
        solution(zeta + 0.01)
    with pytest.raises(InvalidTargetError):
        pompeiu_solve(lambda z: 1.0, small_disk_grid, 0.0)


def test_quadrature_batches(small_disk_grid: GridDomain) -> None:
    with pytest.raises(InvalidParameterError):
        QuadratureScheme(batch_size=0)
    cells = np.flatnonzero(small_disk_grid.mask)
    one = PompeiuSolution(bump, small_disk_grid, QuadratureScheme(batch_size=1)).at_cells(cells)
    many = PompeiuSolution(bump, small_disk_grid, QuadratureScheme(batch_size=64)).at_cells(cells)
    assert np.allclose(one, many, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize(
    "w, tolerance",
    [("z^2", CAUCHY_SMOOTH_ACCEPTANCE), ("exp(z)", CAUCHY_SMOOTH_ACCEPTANCE),
     ("conj(z)", CAUCHY_CONJ_ACCEPTANCE)],
)
def test_cauchy_pompeiu_reconstruction(unit_disk: Disk, w: str, tolerance: float) -> None:
    grid = make_grid(unit_disk, 130)
    field = ExpressionField.from_text(w)
    for target in TARGETS:
        zeta = nearest_center(grid, target)
        assert abs(cauchy_pompeiu_reconstruct(field, grid, zeta) - field(zeta)) <= tolerance


def test_cauchy_pompeiu_needs_a_disk(square_grid: GridDomain, small_disk_grid: GridDomain) -> None:
    with pytest.raises(InvalidDomainError):
        cauchy_pompeiu_reconstruct(lambda z: z, square_grid, square_grid.centers[0])
    zeta = nearest_center(small_disk_grid, 0.0)
    with pytest.raises(InvalidParameterError):
        cauchy_pompeiu_reconstruct(lambda z: z, small_disk_grid, zeta, n_boundary=2)
