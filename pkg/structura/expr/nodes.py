from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

# Function name -> arity.
FUNCTIONS: dict[str, int] = {
    "exp": 1,
    "log": 1,
    "sin": 1,
    "cos": 1,
    "conj": 1,
    "re": 1,
    "im": 1,
    "abs2": 1,
    "pow": 2,
}


@dataclass(frozen=True)
class ExprAst:
    """Base class of expression nodes. Nodes are immutable and hashable."""

    def __add__(self, other: ExprAst) -> ExprAst:
        return Add(self, other)

    def __sub__(self, other: ExprAst) -> ExprAst:
        return Sub(self, other)

    def __mul__(self, other: ExprAst) -> ExprAst:
        return Mul(self, other)

    def __truediv__(self, other: ExprAst) -> ExprAst:
        return Div(self, other)

    def __neg__(self) -> ExprAst:
        return Neg(self)

    def __str__(self) -> str:
        from structura.expr.printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class Lit(ExprAst):
    value: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Var(ExprAst):
    """The complex variable z."""

    name: str = "z"


@dataclass(frozen=True)
class Neg(ExprAst):
    operand: ExprAst


@dataclass(frozen=True)
class BinOp(ExprAst):
    left: ExprAst
    right: ExprAst

    symbol: ClassVar[str] = "?"


@dataclass(frozen=True)
class Add(BinOp):
    symbol: ClassVar[str] = "+"


@dataclass(frozen=True)
class Sub(BinOp):
    symbol: ClassVar[str] = "-"


@dataclass(frozen=True)
class Mul(BinOp):
    symbol: ClassVar[str] = "*"


@dataclass(frozen=True)
class Div(BinOp):
    symbol: ClassVar[str] = "/"


@dataclass(frozen=True)
class Pow(BinOp):
    symbol: ClassVar[str] = "^"


@dataclass(frozen=True)
class Call(ExprAst):
    func: str
    args: tuple[ExprAst, ...]

    def __post_init__(self) -> None:
        if self.func not in FUNCTIONS:
            raise ValueError(f"Unknown function '{self.func}'.")
        if len(self.args) != FUNCTIONS[self.func]:
            raise ValueError(
                f"'{self.func}' takes {FUNCTIONS[self.func]} argument(s), got {len(self.args)}."
            )


ZERO = Lit(0)
ONE = Lit(1)
Z = Var()


def call(func: str, *args: ExprAst) -> Call:
    return Call(func, tuple(args))


def conj(e: ExprAst) -> Call:
    return call("conj", e)


def is_constant(e: ExprAst) -> bool:
    """True if the expression does not depend on z."""
    if isinstance(e, Lit):
        return True
    if isinstance(e, Var):
        return False
    if isinstance(e, Neg):
        return is_constant(e.operand)
    if isinstance(e, BinOp):
        return is_constant(e.left) and is_constant(e.right)
    if isinstance(e, Call):
        return all(is_constant(a) for a in e.args)
    raise TypeError(f"Unknown node {type(e)}")
