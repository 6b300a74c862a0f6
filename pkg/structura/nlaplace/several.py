from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from structura.errors import InvalidParameterError
from structura.fields import ComplexPoint, evaluate_field
from structura.structure import StructuralFunction, d_structural
from structura.types import ComplexField, FieldCombination, MultiField, WirtingerVariable
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    d2_cross,
    quarter_laplacian,
    wirtinger_derivatives,
)

from .laplace import nonlinear_laplace

MAX_VARIABLES = 2


@dataclass(frozen=True)
class MultiPoint:
    """A point `(z^0, ..., z^{n-1})` of C^n with `n` in {1, 2}."""

    coordinates: tuple[complex, ...]

    def __post_init__(self) -> None:
        coords = tuple(ComplexPoint.from_complex(c).z for c in self.coordinates)
        if not 1 <= len(coords) <= MAX_VARIABLES:
            raise InvalidParameterError(
                f"Points need between 1 and {MAX_VARIABLES} coordinates, got {len(coords)}."
            )
        object.__setattr__(self, "coordinates", coords)

    @classmethod
    def of(cls, point: MultiPoint | Sequence[complex] | complex) -> MultiPoint:
        if isinstance(point, MultiPoint):
            return point
        if np.ndim(point) == 0:
            return cls((complex(point),))  # type: ignore[arg-type]
        return cls(tuple(point))  # type: ignore[arg-type]

    @property
    def n(self) -> int:
        return len(self.coordinates)

    def __getitem__(self, i: int) -> complex:
        return self.coordinates[i]

    def replace(self, i: int, z: Any) -> tuple:
        coords: list = list(self.coordinates)
        coords[i] = z
        return tuple(coords)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise InvalidParameterError(f"Coordinate index {i} out of range for n = {self.n}.")


@dataclass(frozen=True, eq=False)
class _Slice:
    """One coordinate of a field of several variables, the others frozen."""

    w: MultiField
    point: MultiPoint
    i: int

    def __call__(self, z: Any) -> Any:
        return self.w(self.point.replace(self.i, z))


@dataclass(frozen=True, eq=False)
class SeparableField:
    """`w(z^0, z^1) = w_0(z^0) w_1(z^1)` or `w_0(z^0) + w_1(z^1)`."""

    factors: tuple[ComplexField, ...]
    combination: FieldCombination = FieldCombination.PRODUCT

    def __call__(self, point: Sequence[Any]) -> Any:
        values = [evaluate_field(f, z) for f, z in zip(self.factors, point)]
        out = values[0]
        for v in values[1:]:
            out = out * v if self.combination == FieldCombination.PRODUCT else out + v
        return out


def separable_field(
    *factors: ComplexField, combination: FieldCombination | str = FieldCombination.PRODUCT
) -> SeparableField:
    """A field of several variables built from one factor per coordinate."""
    if not 1 <= len(factors) <= MAX_VARIABLES:
        raise InvalidParameterError(f"Need between 1 and {MAX_VARIABLES} factors.")
    return SeparableField(tuple(factors), FieldCombination(combination))


@dataclass(frozen=True, eq=False)
class MultiStructuralFunction:
    """A structural function of several complex variables.

    Build it with `lift` (one variable), `separable` (exact derivatives from one
    structural function per coordinate) or `from_callable` (central differences).
    """

    K: MultiField
    n: int
    base: StructuralFunction | None = None
    factors: tuple[StructuralFunction, ...] = ()
    combination: FieldCombination = FieldCombination.PRODUCT

    @classmethod
    def lift(cls, S: StructuralFunction) -> MultiStructuralFunction:
        return cls(lambda point: S(point[0]), 1, base=S, factors=(S,))

    @classmethod
    def separable(
        cls,
        *factors: StructuralFunction,
        combination: FieldCombination | str = FieldCombination.PRODUCT,
    ) -> MultiStructuralFunction:
        field = separable_field(*factors, combination=combination)
        return cls(field, len(factors), factors=tuple(factors), combination=field.combination)

    @classmethod
    def from_callable(cls, K: MultiField, n: int) -> MultiStructuralFunction:
        return cls(K, n)

    def _check(self, point: MultiPoint, *indices: int) -> None:
        if point.n != self.n:
            raise InvalidParameterError(
                f"Structural function has {self.n} variable(s), point has {point.n}."
            )
        for i in indices:
            point.check_index(i)

    def _others(self, point: MultiPoint, *skip: int) -> complex:
        if self.combination != FieldCombination.PRODUCT:
            return 1.0
        out = 1.0 + 0j
        for k, S in enumerate(self.factors):
            if k not in skip:
                out *= complex(S(point[k]))
        return out

    def first(
        self,
        point: MultiPoint,
        i: int,
        wrt: WirtingerVariable | str,
        policy: StepPolicy = DEFAULT_POLICY,
    ) -> complex:
        """`dK/dz^i` or `dK/dzbar^i`."""
        self._check(point, i)
        k = 0 if WirtingerVariable(wrt) == WirtingerVariable.Z else 1
        if self.factors:
            d = self.factors[i].derivatives(point[i], policy)[k]
            return complex(d) * self._others(point, i)
        return complex(wirtinger_derivatives(_Slice(self.K, point, i), point[i], policy)[k])

    def mixed(
        self, point: MultiPoint, i: int, j: int, policy: StepPolicy = DEFAULT_POLICY
    ) -> complex:
        """`d^2 K / dz^i dzbar^j`."""
        self._check(point, i, j)
        if self.factors:
            if i == j:
                return complex(self.factors[i].mixed(point[i], policy)) * self._others(point, i)
            if self.combination == FieldCombination.SUM:
                return 0j
            d_i = self.factors[i].derivatives(point[i], policy)[0]
            d_j = self.factors[j].derivatives(point[j], policy)[1]
            return complex(d_i) * complex(d_j) * self._others(point, i, j)
        if i == j:
            return complex(quarter_laplacian(_Slice(self.K, point, i), point[i], policy))
        return _cross(self.K, point, i, j, policy)


def _cross(w: MultiField, point: MultiPoint, i: int, j: int, policy: StepPolicy) -> complex:
    def pair(a: complex, b: complex) -> complex:
        coords: list = list(point.coordinates)
        coords[i], coords[j] = a, b
        return complex(w(tuple(coords)))

    return d2_cross(pair, point[i], point[j], WirtingerVariable.Z, WirtingerVariable.ZBAR, policy)


def d_structural_nd(
    w: MultiField,
    S: MultiStructuralFunction,
    point: MultiPoint | Sequence[complex],
    i: int,
    wrt: WirtingerVariable | str,
    policy: StepPolicy = DEFAULT_POLICY,
) -> complex:
    """
    `Dw/dz^i = w_{z^i} + w K_{z^i}` or `Dw/dzbar^i = w_{zbar^i} + w K_{zbar^i}`, with the
    other coordinates frozen. Indices are 0-based.

    Raises:
        InvalidParameterError: if `i` is out of range or the dimensions disagree.
    """
    point = MultiPoint.of(point)
    S._check(point, i)
    wrt = WirtingerVariable(wrt)
    if point.n == 1 and S.base is not None:
        return d_structural(_Slice(w, point, 0), S.base, point[0], policy)[wrt]
    slice_i = _Slice(w, point, i)
    k = 0 if wrt == WirtingerVariable.Z else 1
    d = wirtinger_derivatives(slice_i, point[i], policy)[k]
    value = evaluate_field(slice_i, point[i])
    return complex(d + value * S.first(point, i, wrt, policy))


def nonlinear_laplace_nd(
    w: MultiField,
    S: MultiStructuralFunction,
    point: MultiPoint | Sequence[complex],
    i: int,
    j: int,
    policy: StepPolicy = DEFAULT_POLICY,
) -> complex:
    """
    The `(i, j)` component of the nonlinear Laplace operator,
    `w_{i jbar} + K_{jbar} w_i + K_i w_{jbar} + (K_{i jbar} + K_i K_{jbar}) w`,
    where `i` refers to `z^i` and `jbar` to `zbar^j` (0-based).

    Raises:
        InvalidParameterError: if an index is out of range or the dimensions disagree.
    """
    point = MultiPoint.of(point)
    S._check(point, i, j)
    if point.n == 1 and S.base is not None:
        return nonlinear_laplace(_Slice(w, point, 0), S.base, point[0], policy)
    slice_i, slice_j = _Slice(w, point, i), _Slice(w, point, j)
    if i == j:
        w_ij = complex(quarter_laplacian(slice_i, point[i], policy))
    else:
        w_ij = _cross(w, point, i, j, policy)
    w_i = wirtinger_derivatives(slice_i, point[i], policy)[0]
    w_j = wirtinger_derivatives(slice_j, point[j], policy)[1]
    K_i = S.first(point, i, WirtingerVariable.Z, policy)
    K_j = S.first(point, j, WirtingerVariable.ZBAR, policy)
    K_ij = S.mixed(point, i, j, policy)
    value = evaluate_field(slice_i, point[i])
    return complex(w_ij + K_j * w_i + K_i * w_j + (K_ij + K_i * K_j) * value)
