from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

import numpy as np

from structura.errors import NumericalFailureError
from structura.fields.grid import ComplexPoint, GridDomain
from structura.fields.sampled import SampledField, max_location, norm_lp
from structura.logger import get_logger
from structura.utils import json_number

logger = get_logger(__name__)


def json_safe(obj: Any) -> Any:
    """Recursively convert report parameters to JSON friendly values."""
    if isinstance(obj, Enum):
        return str(obj)
    if isinstance(obj, ComplexPoint):
        return {"x": obj.x, "y": obj.y}
    if isinstance(obj, (complex, np.complexfloating, float, np.floating)):
        return json_number(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """A named residual field together with its discrete norms.

    Attributes:
        operator: Name of the operator whose residual was sampled.
        field: The residual samples; only valid cells enter the norms.
        norms: `l2` and `linf`, plus `lp` values keyed by order when requested.
        max_location: Cell center where the residual modulus is largest.
        max_abs: That largest modulus.
        params: Step sizes, expressions and any other inputs worth recording.
    """

    operator: str
    field: SampledField
    norms: dict
    max_location: ComplexPoint
    max_abs: float
    params: dict = field(default_factory=dict)

    @property
    def grid(self) -> GridDomain:
        return self.field.grid

    @property
    def l2(self) -> float:
        return float(self.norms["l2"])

    @property
    def linf(self) -> float:
        return float(self.norms["linf"])

    def is_finite(self) -> bool:
        return math.isfinite(self.l2) and math.isfinite(self.linf)

    def to_dict(self) -> dict:
        grid = {**self.grid.metadata(), "valid_cells": self.field.n_valid}
        return {
            "operator": self.operator,
            "grid": grid,
            "norms": json_safe(self.norms),
            "max": {"x": self.max_location.x, "y": self.max_location.y, "abs": self.max_abs},
            "params": json_safe(self.params),
        }


def build_report(
    operator: str,
    residual: SampledField,
    params: dict | None = None,
    p_values: Iterable[float] = (),
) -> ResidualReport:
    """
    Assemble a `ResidualReport` from a sampled residual field.

    Arguments:
        operator: Operator name written to the report.
        residual: Residual samples.
        params: Extra metadata recorded verbatim.
        p_values: Additional norm orders to compute.
    """
    if residual.n_valid == 0:
        raise NumericalFailureError(f"Residual of '{operator}' has no valid cells")
    norms: dict = {"l2": norm_lp(residual, 2.0), "linf": norm_lp(residual, math.inf)}
    lp = {f"{p:g}": norm_lp(residual, p) for p in p_values}
    if lp:
        norms["lp"] = lp
    where, modulus = max_location(residual)
    logger.info(f"{operator}: linf={norms['linf']:.3e} l2={norms['l2']:.3e} at {where.z}")
    return ResidualReport(operator, residual, norms, where, modulus, dict(params or {}))
