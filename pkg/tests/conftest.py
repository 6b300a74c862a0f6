from __future__ import annotations

from pytest import fixture  # type: ignore

from structura.expr import ExpressionField
from structura.fields import ComplexPoint, Disk, GridDomain, Rectangle, make_grid
from structura.structure import StructuralFunction

BASIC_GRID = 64
SMALL_GRID = 16


@fixture
def unit_disk() -> Disk:
    return Disk(ComplexPoint(0.0, 0.0), 1.0)


@fixture
def disk_grid(unit_disk: Disk) -> GridDomain:
    return make_grid(unit_disk, BASIC_GRID)


@fixture
def small_disk_grid(unit_disk: Disk) -> GridDomain:
    return make_grid(unit_disk, SMALL_GRID)


@fixture
def square_grid() -> GridDomain:
    return make_grid(Rectangle(-1.0, 1.0, -1.0, 1.0), SMALL_GRID)


@fixture
def unit_square_grid() -> GridDomain:
    return make_grid(Rectangle(0.0, 1.0, 0.0, 1.0), BASIC_GRID)


@fixture
def kappa_structure() -> StructuralFunction:
    return StructuralFunction.from_kappa("0.3*conj(z)+0.2*z*conj(z)")


@fixture
def w_poly() -> ExpressionField:
    return ExpressionField.from_text("z^2 + 0.5*conj(z)*z - 1")
