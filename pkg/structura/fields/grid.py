from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from structura.errors import InvalidDomainError, InvalidParameterError, InvalidTargetError
from structura.types import DomainShape

# Relative tolerance used to decide that a point coincides with a cell center.
CENTER_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ComplexPoint:
    """A point z = x + iy of the complex plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(
                f"Point coordinates must be finite, got ({self.x}, {self.y})."
            )

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def __complex__(self) -> complex:
        return self.z

    @classmethod
    def from_complex(cls, z: complex | ComplexPoint) -> ComplexPoint:
        if isinstance(z, ComplexPoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class Rectangle:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not all(map(math.isfinite, (self.x_min, self.x_max, self.y_min, self.y_max))):
            raise InvalidDomainError("Rectangle bounds must be finite.")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise InvalidDomainError(
                f"Rectangle needs a positive extent on both axes, got "
                f"[{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]."
            )


@dataclass(frozen=True)
class Disk:
    center: ComplexPoint
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidDomainError(f"Disk radius must be positive, got {self.radius}.")


Shape = Union[Rectangle, Disk]


@dataclass(frozen=True)
class GridDomain:
    """A uniform cell-centered grid over a rectangle or over the bounding square of a disk.

    Cells are numbered row-major: cell `k = j * nx + i` has center
    `(x_min + (i + 1/2) dx, y_min + (j + 1/2) dy)`. For disks a cell belongs to the
    domain iff its center lies strictly inside the circle.
    """

    shape: Shape
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if int(self.nx) != self.nx or int(self.ny) != self.ny:
            raise InvalidDomainError("Cell counts must be integers.")
        if self.nx < 2 or self.ny < 2:
            raise InvalidDomainError(
                f"Grids need at least 2 cells per axis, got {self.nx}x{self.ny}."
            )

    @property
    def kind(self) -> DomainShape:
        return DomainShape.DISK if isinstance(self.shape, Disk) else DomainShape.RECTANGLE

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        if isinstance(self.shape, Disk):
            c, r = self.shape.center, self.shape.radius
            return (c.x - r, c.x + r, c.y - r, c.y + r)
        s = self.shape
        return (s.x_min, s.x_max, s.y_min, s.y_max)

    @property
    def dx(self) -> float:
        x_min, x_max, _, _ = self.bounds
        return (x_max - x_min) / self.nx

    @property
    def dy(self) -> float:
        _, _, y_min, y_max = self.bounds
        return (y_max - y_min) / self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def size(self) -> int:
        return self.nx * self.ny

    @cached_property
    def centers(self) -> np.ndarray:
        x_min, _, y_min, _ = self.bounds
        xs = x_min + (np.arange(self.nx) + 0.5) * self.dx
        ys = y_min + (np.arange(self.ny) + 0.5) * self.dy
        X, Y = np.meshgrid(xs, ys)
        return (X + 1j * Y).ravel()

    @cached_property
    def mask(self) -> np.ndarray:
        if isinstance(self.shape, Disk):
            return np.abs(self.centers - self.shape.center.z) < self.shape.radius
        return np.ones(self.size, dtype=bool)

    @property
    def n_valid(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def area(self) -> float:
        """Area covered by the in-mask cells."""
        return self.n_valid * self.cell_area

    def contains(self, z: complex | np.ndarray) -> np.ndarray:
        """Whether points lie in the continuous domain (strictly inside for disks)."""
        z = np.asarray(z, dtype=complex)
        if isinstance(self.shape, Disk):
            return np.abs(z - self.shape.center.z) < self.shape.radius
        s = self.shape
        return (z.real >= s.x_min) & (z.real <= s.x_max) & (z.imag >= s.y_min) & (z.imag <= s.y_max)

    @property
    def inradius(self) -> float:
        """Radius of the largest disk inside the domain."""
        if isinstance(self.shape, Disk):
            return float(self.shape.radius)
        x_min, x_max, y_min, y_max = self.bounds
        return 0.5 * min(x_max - x_min, y_max - y_min)

    def distance_to_boundary(self, z: complex | np.ndarray) -> np.ndarray:
        """Distance from points inside the domain to its boundary."""
        z = np.asarray(z, dtype=complex)
        if isinstance(self.shape, Disk):
            return self.shape.radius - np.abs(z - self.shape.center.z)
        s = self.shape
        return np.minimum.reduce(
            [z.real - s.x_min, s.x_max - z.real, z.imag - s.y_min, s.y_max - z.imag]
        )

    def cell_index(self, point: complex | ComplexPoint) -> int:
        """Index of the in-mask cell whose center is `point`."""
        z = ComplexPoint.from_complex(point).z
        x_min, _, y_min, _ = self.bounds
        i = int(round((z.real - x_min) / self.dx - 0.5))
        j = int(round((z.imag - y_min) / self.dy - 0.5))
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            raise InvalidTargetError(f"Point {z} lies outside the grid.")
        k = j * self.nx + i
        if abs(self.centers[k] - z) > CENTER_TOLERANCE * max(self.dx, self.dy):
            raise InvalidTargetError(f"Point {z} is not a cell center.")
        if not self.mask[k]:
            raise InvalidTargetError(f"Cell center {z} lies outside the domain mask.")
        return k

    def neighbours(self) -> np.ndarray:
        """Indices of the (east, west, north, south) neighbours of every cell, -1 if missing."""
        k = np.arange(self.size)
        i, j = k % self.nx, k // self.nx
        east = np.where(i + 1 < self.nx, k + 1, -1)
        west = np.where(i > 0, k - 1, -1)
        north = np.where(j + 1 < self.ny, k + self.nx, -1)
        south = np.where(j > 0, k - self.nx, -1)
        return np.stack([east, west, north, south])

    def metadata(self) -> dict:
        d: dict = {"shape": str(self.kind), "nx": self.nx, "ny": self.ny}
        if isinstance(self.shape, Disk):
            d.update(
                cx=self.shape.center.x, cy=self.shape.center.y, radius=float(self.shape.radius)
            )
        else:
            x_min, x_max, y_min, y_max = self.bounds
            d.update(x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max)
        return d


def make_grid(shape: Shape, nx: int, ny: int | None = None) -> GridDomain:
    """
    Build a uniform cell-centered grid.

    Arguments:
        shape: A `Rectangle` or a `Disk`.
        nx: Cells along x.
        ny: Cells along y, defaults to `nx`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.fields import Rectangle, make_grid

    grid = make_grid(Rectangle(0.0, 1.0, 0.0, 1.0), 3, 3)
    print(grid.centers[0])
    ```
    """
    return GridDomain(shape, nx, nx if ny is None else ny)


_NUMBER = r"\s*[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\s*"
_RECT = re.compile(rf"^rect:({_NUMBER}),({_NUMBER}),({_NUMBER}),({_NUMBER})$")
_DISK = re.compile(rf"^disk:({_NUMBER}),({_NUMBER}),({_NUMBER})$")


def parse_domain(text: str) -> Shape:
    """Parse `rect:x0,x1,y0,y1` or `disk:cx,cy,r`."""
    text = text.strip()
    if m := _RECT.match(text):
        x0, x1, y0, y1 = map(float, m.groups())
        return Rectangle(x0, x1, y0, y1)
    if m := _DISK.match(text):
        cx, cy, r = map(float, m.groups())
        return Disk(ComplexPoint(cx, cy), r)
    raise InvalidDomainError(
        f"Cannot parse domain '{text}'; expected 'rect:x0,x1,y0,y1' or 'disk:cx,cy,r'."
    )
