from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from structura.expr.differentiate import wirtinger_symbolic
from structura.expr.evaluate import evaluate
from structura.expr.nodes import ExprAst, is_constant
from structura.expr.parser import parse
from structura.expr.printer import to_text
from structura.types import TArray, WirtingerVariable


@dataclass(frozen=True)
class ExpressionField:
    """A complex field backed by an expression tree.

    Calling the field evaluates the expression elementwise, so it accepts single points
    and numpy arrays alike. Its Wirtinger derivatives are again `ExpressionField`s built
    symbolically.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import ExpressionField

    K = ExpressionField.from_text("exp(z*conj(z))")
    print(K(1.0), K.d_zbar(1.0), K.d_zbar.source)
    ```
    """

    ast: ExprAst
    text: str | None = field(default=None, compare=False)

    @classmethod
    def from_text(cls, source: str) -> ExpressionField:
        return cls(parse(source), source)

    @property
    def source(self) -> str:
        """The text the field was parsed from, or the printed tree."""
        return self.text if self.text is not None else to_text(self.ast)

    @property
    def is_constant(self) -> bool:
        return is_constant(self.ast)

    def __call__(self, z: TArray) -> Any:
        return evaluate(self.ast, z)

    def derivative(self, wrt: WirtingerVariable | str) -> ExpressionField:
        if WirtingerVariable(wrt) == WirtingerVariable.Z:
            return self.d_z
        return self.d_zbar

    @cached_property
    def d_z(self) -> ExpressionField:
        return ExpressionField(wirtinger_symbolic(self.ast, WirtingerVariable.Z))

    @cached_property
    def d_zbar(self) -> ExpressionField:
        return ExpressionField(wirtinger_symbolic(self.ast, WirtingerVariable.ZBAR))

    def __str__(self) -> str:
        return self.source


def expression_field(source: str | ExprAst | ExpressionField) -> ExpressionField:
    """Coerce text, a tree or an existing field to an `ExpressionField`."""
    if isinstance(source, ExpressionField):
        return source
    if isinstance(source, ExprAst):
        return ExpressionField(source)
    return ExpressionField.from_text(source)
