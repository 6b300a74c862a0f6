from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from typing import Optional

from structura.errors import InvalidParameterError
from structura.fields import GridDomain, Shape, make_grid, parse_domain
from structura.types import FieldCombination, HoloMode, NcrConvention, ReportFormat
from structura.wirtinger import StepPolicy

# Modules to be automatically added to the structura namespace
__all__ = ["CommandConfig"]

DEFAULT_GRID = 64
DEFAULT_DOMAIN = "rect:-1,1,-1,1"


def default_grid() -> int:
    """Cells per axis used when `--grid` is not given, from `STRUCTURA_GRID`."""
    value = os.environ.get("STRUCTURA_GRID", str(DEFAULT_GRID))
    try:
        return int(value)
    except ValueError as e:
        raise InvalidParameterError(f"STRUCTURA_GRID must be an integer, got '{value}'.") from e


@dataclass
class CommandConfig:
    """Settings of one CLI invocation.

    Expression fields hold source text in the variable `z`; `None` means not given.
    """

    subcommand: str
    w: Optional[str] = None
    K: Optional[str] = None
    kappa: Optional[str] = None
    phi: Optional[str] = None
    f: Optional[str] = None
    g: Optional[str] = None
    A: Optional[str] = None
    B: Optional[str] = None
    C: Optional[str] = None
    w2: Optional[str] = None
    K2: Optional[str] = None
    domain: str = DEFAULT_DOMAIN
    grid: Optional[int] = None
    h1: float = 1e-5
    h2: float = 1e-3
    mode: str = HoloMode.REDUCED.value
    convention: str = NcrConvention.STANDARD.value
    combination: str = FieldCombination.PRODUCT.value
    format: str = ReportFormat.JSON.value
    output: Optional[str] = None
    at: list = field(default_factory=list)
    at2: Optional[str] = None
    box: str = "rect:-1,1,-1,1"
    margin: Optional[float] = None
    n_boundary: int = 1024
    action: Optional[str] = None
    number: Optional[int] = None

    def __post_init__(self) -> None:
        if self.grid is None:
            self.grid = default_grid()
        if self.grid < 2:
            raise InvalidParameterError(f"Grid needs at least 2 cells per axis, got {self.grid}.")
        parse_domain(self.domain)
        parse_domain(self.box)
        try:
            self.mode = HoloMode(self.mode).value
            self.convention = NcrConvention(self.convention).value
            self.combination = FieldCombination(self.combination).value
            self.format = ReportFormat(self.format).value
        except ValueError as e:
            raise InvalidParameterError(str(e)) from e

    def available_options(self) -> str:
        """Return as a string the available fields with types of the configuration

        Returns:
            str: a string with all the available fields, one per line
        """
        conf_msg = ""
        for f in fields(self):
            if not f.name.startswith("_"):
                conf_msg += f"Name: {f.name} - Type: {f.type} - Default value: {f.default}\n"
        return conf_msg

    @classmethod
    def from_dict(cls, values: dict) -> CommandConfig:
        field_names = {f.name for f in fields(cls)}
        init_data = {}

        for key, value in values.items():
            if key not in field_names:
                raise InvalidParameterError(f"Unknown field in the configuration: '{key}'.")
            else:
                init_data[key] = value

        return cls(**init_data)

    @property
    def shape(self) -> Shape:
        return parse_domain(self.domain)

    def make_grid(self) -> GridDomain:
        return make_grid(self.shape, int(self.grid))  # type: ignore[arg-type]

    @property
    def policy(self) -> StepPolicy:
        return StepPolicy(self.h1, self.h2)
