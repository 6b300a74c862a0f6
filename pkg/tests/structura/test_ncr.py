from __future__ import annotations

import cmath
import math
from typing import Any

import numpy as np
import pytest
from metrics import LAPLACE_RHS_ACCEPTANCE, NCR_ACCEPTANCE  # type: ignore

from structura.errors import ModeError
from structura.expr import ExpressionField
from structura.fields import GridDomain, Rectangle
from structura.nlaplace import (
    NcrPair,
    fg_cr_check,
    fg_from_structure,
    laplace_rhs_check,
    ncr_residual,
)
from structura.structure import StructuralFunction
from structura.types import NcrConvention

C = 0.3
BOX = Rectangle(-1.0, 1.0, -1.0, 1.0)

# f = a u + b v, g = -b u + a v is solved by u + i v = e^{i theta} e^{s x + t y}
# whenever s + i t = (i a - b) e^{-2 i theta}.
A, B, THETA = 0.3, 0.2, 0.4
SIGMA = (1j * A - B) * cmath.exp(-2j * THETA)


def manufactured_u(z: Any) -> Any:
    return math.cos(THETA) * np.exp(SIGMA.real * np.real(z) + SIGMA.imag * np.imag(z))


def manufactured_v(z: Any) -> Any:
    return math.sin(THETA) * np.exp(SIGMA.real * np.real(z) + SIGMA.imag * np.imag(z))


@pytest.fixture
def structure() -> StructuralFunction:
    return StructuralFunction.from_kappa(f"{C}*conj(z)")


def test_pair_from_structure(structure: StructuralFunction) -> None:
    pair = NcrPair.from_structure(structure, 0.2 + 0.1j)
    f, g = pair.values(np.array([1.0, 0.5]), np.array([2.0, -1.0]))
    assert np.allclose(f, [-2 * C * 2.0, -2 * C * -1.0])
    assert np.allclose(g, [-2 * C * 1.0, -2 * C * 0.5])
    assert fg_from_structure(structure, 1.0, 2.0, 0.5) == pytest.approx((-1.2, -0.6))


def test_fg_from_structure_needs_kappa() -> None:
    with pytest.raises(ModeError):
        fg_from_structure(StructuralFunction.from_expression("1 + z"), 1.0, 1.0, 0.0)


def test_structural_solution_solves_the_system(
    structure: StructuralFunction, disk_grid: GridDomain
) -> None:
    u = ExpressionField.from_text(f"re(exp(-{C}*conj(z)))")
    v = ExpressionField.from_text(f"im(exp(-{C}*conj(z)))")
    first, second = ncr_residual(u, v, NcrPair.from_structure(structure, 0.0), disk_grid)
    assert first.operator == "ncr-1"
    assert second.operator == "ncr-2"
    assert first.linf <= NCR_ACCEPTANCE
    assert second.linf <= NCR_ACCEPTANCE


def test_structure_pair_satisfies_swapped_identities(structure: StructuralFunction) -> None:
    pair = NcrPair.from_structure(structure, 0.0)
    standard = fg_cr_check(pair, BOX, 16, NcrConvention.STANDARD)
    swapped = fg_cr_check(pair, BOX, 16, "swapped")
    assert standard[0].linf <= 1e-8
    # f_v + g_u = -4c
    assert standard[1].linf == pytest.approx(4 * C, rel=1e-6)
    assert swapped[0].linf <= 1e-8
    assert swapped[1].linf <= 1e-8
    assert swapped[0].operator == "fg-swapped-1"
    assert standard[0].params["convention"] == NcrConvention.STANDARD


def test_linear_pair_satisfies_standard_identities() -> None:
    pair = NcrPair.linear(A, B)
    first, second = fg_cr_check(pair, BOX, 8)
    assert first.linf <= 1e-8
    assert second.linf <= 1e-8
    assert fg_cr_check(pair, BOX, 8, "swapped")[0].linf == pytest.approx(2 * B, rel=1e-6)


def test_scalar_only_functions_are_vectorised() -> None:
    pair = NcrPair(lambda u, v: math.exp(u) * v, lambda u, v: math.sin(v))
    f, g = pair.values(np.array([0.0, 1.0]), np.array([2.0, 0.5]))
    assert np.allclose(f, [2.0, math.e * 0.5])
    assert np.allclose(g, [math.sin(2.0), math.sin(0.5)])
    f_u, f_v, g_u, g_v = pair.partials(np.array([1.0, 1.0]), np.array([2.0, 2.0]))
    assert f_u[0] == pytest.approx(2 * math.e, rel=1e-8)
    assert f_v[0] == pytest.approx(math.e, rel=1e-8)
    assert g_u[0] == pytest.approx(0.0, abs=1e-8)
    assert g_v[0] == pytest.approx(math.cos(2.0), rel=1e-8)


def test_energy_gradient_of_linear_pair() -> None:
    grad_u, grad_v = NcrPair.linear(A, B).energy_gradient(np.array([0.4]), np.array([-0.7]))
    assert grad_u[0] == pytest.approx((A**2 + B**2) * 0.4, rel=1e-8)
    assert grad_v[0] == pytest.approx((A**2 + B**2) * -0.7, rel=1e-8)


def test_manufactured_solution(disk_grid: GridDomain) -> None:
    pair = NcrPair.linear(A, B)
    first, second = ncr_residual(manufactured_u, manufactured_v, pair, disk_grid)
    assert first.linf <= NCR_ACCEPTANCE
    assert second.linf <= NCR_ACCEPTANCE
    lap_u, lap_v = laplace_rhs_check(manufactured_u, manufactured_v, pair, disk_grid)
    assert lap_u.operator == "laplace-rhs-u"
    assert lap_u.linf <= LAPLACE_RHS_ACCEPTANCE
    assert lap_v.linf <= LAPLACE_RHS_ACCEPTANCE


def test_laplace_rhs_detects_a_wrong_pair(disk_grid: GridDomain) -> None:
    pair = NcrPair.linear(2 * A, B)
    lap_u, _ = laplace_rhs_check(manufactured_u, manufactured_v, pair, disk_grid)
    assert lap_u.linf > 1e-2
