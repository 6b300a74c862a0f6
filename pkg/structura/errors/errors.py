from __future__ import annotations

from typing import Any


class StructuraException(Exception):
    pass


class InvalidDomainError(StructuraException):
    pass


class InvalidParameterError(StructuraException):
    pass


class InvalidTargetError(StructuraException):
    pass


class ModeError(StructuraException):
    pass


class NumericalFailureError(StructuraException):
    """Raised when a field evaluates to a non-finite value.

    Attributes:
        point: The complex point (or tuple of points) where evaluation failed, if known.
    """

    def __init__(self, message: str, point: Any = None) -> None:
        if point is not None:
            message = f"{message} at {point}"
        super().__init__(message)
        self.point = point


class ExpressionParseError(StructuraException):
    """Malformed expression text.

    Attributes:
        message: Human readable reason.
        position: Byte offset into the source where parsing failed.
        expected: Hint about the kind of token that was expected there.
        source: The text being parsed, once known.
    """

    def __init__(
        self, message: str, position: int, expected: str = "", source: str | None = None
    ) -> None:
        super().__init__(f"{message} (position {position})")
        self.message = message
        self.position = position
        self.expected = expected
        self.source = source

    def diagnostic(self, source: str | None = None) -> str:
        """Two-line rendering of the source with a caret under the failing position."""
        source = self.source if source is None else source
        if source is None:
            return str(self)
        hint = f"; expected {self.expected}" if self.expected else ""
        column = len(source.encode()[: self.position].decode(errors="ignore"))
        return f"{source}\n{' ' * column}^ {self.message}{hint}"
