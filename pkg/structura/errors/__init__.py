from __future__ import annotations

from .errors import (
    ExpressionParseError,
    InvalidDomainError,
    InvalidParameterError,
    InvalidTargetError,
    ModeError,
    NumericalFailureError,
    StructuraException,
)

# Modules to be automatically added to the structura namespace
__all__ = [
    "ExpressionParseError",
    "InvalidDomainError",
    "InvalidParameterError",
    "InvalidTargetError",
    "ModeError",
    "NumericalFailureError",
    "StructuraException",
]
