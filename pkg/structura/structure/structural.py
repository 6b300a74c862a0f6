from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from structura.errors import ModeError
from structura.expr import ExprAst, ExpressionField, expression_field
from structura.expr.nodes import ONE, Add, Lit
from structura.fields import evaluate_field, field_label
from structura.logger import get_logger
from structura.types import ComplexField, DerivativeSource, StructureMode, TArray
from structura.wirtinger import (
    DEFAULT_POLICY,
    StepPolicy,
    quarter_laplacian,
    wirtinger_derivatives,
)

logger = get_logger(__name__)

# |K| below this value marks a degenerate structural function (1 + kappa = 0).
DEGENERACY_TOLERANCE = 1e-12


class KappaPartials(NamedTuple):
    """Real partial derivatives of kappa = alpha + i beta."""

    alpha_x: Any
    alpha_y: Any
    beta_x: Any
    beta_y: Any


@dataclass(frozen=True, eq=False)
class _Shifted:
    """z -> 1 + kappa(z)."""

    kappa: ComplexField

    def __call__(self, z: TArray) -> Any:
        return 1.0 + evaluate_field(self.kappa, z)


@dataclass(frozen=True, eq=False)
class StructuralFunction:
    """A structural function K together with whatever derivatives of it are known exactly.

    Use the constructors `from_expression`, `from_kappa`, `from_callable` and
    `from_kappa_callable`. Expression backed functions carry symbolic derivatives;
    derivatives of plain callables are taken by central differences.

    Attributes:
        K: The field K.
        K_z: Exact `dK/dz`, if known.
        K_zbar: Exact `dK/dzbar`, if known.
        K_z_zbar: Exact `d^2K/dz dzbar`, if known.
        mode: `general` for an arbitrary K, `kappa` when K = 1 + kappa.
        kappa: The perturbation kappa in kappa mode.
    """

    K: ComplexField
    K_z: ComplexField | None = None
    K_zbar: ComplexField | None = None
    K_z_zbar: ComplexField | None = None
    mode: StructureMode = StructureMode.GENERAL
    kappa: ComplexField | None = None

    @classmethod
    def from_expression(cls, K: str | ExprAst | ExpressionField) -> StructuralFunction:
        field = expression_field(K)
        return cls(field, field.d_z, field.d_zbar, field.d_zbar.d_z)

    @classmethod
    def from_kappa(cls, kappa: str | ExprAst | ExpressionField) -> StructuralFunction:
        """K = 1 + kappa with kappa an expression."""
        k = expression_field(kappa)
        field = ExpressionField(Add(ONE, k.ast), f"1+({k.source})")
        return cls(field, k.d_z, k.d_zbar, k.d_zbar.d_z, StructureMode.KAPPA, k)

    @classmethod
    def from_callable(
        cls,
        K: ComplexField,
        K_z: ComplexField | None = None,
        K_zbar: ComplexField | None = None,
        K_z_zbar: ComplexField | None = None,
    ) -> StructuralFunction:
        return cls(K, K_z, K_zbar, K_z_zbar)

    @classmethod
    def from_kappa_callable(cls, kappa: ComplexField) -> StructuralFunction:
        """K = 1 + kappa with kappa an arbitrary callable; derivatives are numerical."""
        return cls(_Shifted(kappa), mode=StructureMode.KAPPA, kappa=kappa)

    @classmethod
    def constant(cls, value: complex = 1.0) -> StructuralFunction:
        return cls.from_expression(ExpressionField(Lit(value)))

    @property
    def source(self) -> DerivativeSource:
        exact = self.K_z is not None and self.K_zbar is not None
        return DerivativeSource.SYMBOLIC if exact else DerivativeSource.NUMERIC

    @property
    def is_kappa(self) -> bool:
        return self.mode == StructureMode.KAPPA

    def __call__(self, z: TArray) -> Any:
        return evaluate_field(self.K, z)

    def derivatives(self, z: TArray, policy: StepPolicy = DEFAULT_POLICY) -> tuple[Any, Any]:
        """`(K_z, K_zbar)` at `z`, exact when available."""
        if self.K_z is not None and self.K_zbar is not None:
            return evaluate_field(self.K_z, z), evaluate_field(self.K_zbar, z)
        return wirtinger_derivatives(self.K, z, policy)

    def mixed(self, z: TArray, policy: StepPolicy = DEFAULT_POLICY) -> Any:
        """`K_{z zbar}` at `z`, exact when available."""
        if self.K_z_zbar is not None:
            return evaluate_field(self.K_z_zbar, z)
        return quarter_laplacian(self.K, z, policy)

    def _require_kappa(self, operation: str) -> ComplexField:
        if not self.is_kappa or self.kappa is None:
            raise ModeError(f"'{operation}' needs a structural function given as K = 1 + kappa.")
        return self.kappa

    def kappa_partials(self, z: TArray, policy: StepPolicy = DEFAULT_POLICY) -> KappaPartials:
        """
        `alpha_x, alpha_y, beta_x, beta_y` for kappa = alpha + i beta.

        With `kappa_x = kappa_z + kappa_zbar` and `kappa_y = i (kappa_z - kappa_zbar)`,
        the partials of alpha and beta are the real and imaginary parts of those.

        Raises:
            ModeError: for a structural function not given in kappa form.
        """
        self._require_kappa("kappa_partials")
        k_z, k_zbar = self.derivatives(z, policy)
        k_x = k_z + k_zbar
        k_y = 1j * (k_z - k_zbar)
        return KappaPartials(np.real(k_x), np.real(k_y), np.imag(k_x), np.imag(k_y))

    def real_parts(self, z: TArray) -> tuple[Any, Any]:
        """`(k1, k2)` with K = k1 + i k2."""
        values = self(z)
        return np.real(values), np.imag(values)

    def alpha_beta(self, z: TArray) -> tuple[Any, Any]:
        """`(alpha, beta)` with kappa = alpha + i beta."""
        values = evaluate_field(self._require_kappa("alpha_beta"), z)
        return np.real(values), np.imag(values)

    def degenerate_cells(self, z: TArray) -> int:
        """Number of points where K = 1 + kappa vanishes."""
        count = int(np.count_nonzero(np.abs(self(z)) <= DEGENERACY_TOLERANCE))
        if count:
            logger.warning(f"Structural function vanishes at {count} point(s).")
        return count

    def params(self) -> dict:
        d: dict = {
            "K": field_label(self.K),
            "structure_mode": self.mode,
            "derivatives": self.source,
        }
        if self.K_zbar is not None:
            d["K_zbar"] = field_label(self.K_zbar)
        return d
