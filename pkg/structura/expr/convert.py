from __future__ import annotations

from functools import singledispatch

import sympy

from structura.expr.differentiate import rewrite
from structura.expr.nodes import Add, BinOp, Call, Div, ExprAst, Lit, Mul, Neg, Pow, Sub, Var

Z_SYMBOL = sympy.Symbol("z")
ZBAR_SYMBOL = sympy.Symbol("zbar")

_BINARY = {
    Add: lambda a, b: a + b,
    Sub: lambda a, b: a - b,
    Mul: lambda a, b: a * b,
    Div: lambda a, b: a / b,
    Pow: lambda a, b: a**b,
}

_FUNCTIONS = {"exp": sympy.exp, "log": sympy.log, "sin": sympy.sin, "cos": sympy.cos}


def _number(value: complex) -> sympy.Expr:
    re, im = sympy.Float(value.real, 17), sympy.Float(value.imag, 17)
    return re if value.imag == 0 else re + sympy.I * im


@singledispatch
def _to_sympy(node: ExprAst, conjugated: bool) -> sympy.Expr:
    raise TypeError(f"Cannot convert {type(node).__name__}")


@_to_sympy.register
def _(node: Lit, conjugated: bool) -> sympy.Expr:
    return _number(node.value.conjugate() if conjugated else node.value)


@_to_sympy.register
def _(node: Var, conjugated: bool) -> sympy.Expr:
    return ZBAR_SYMBOL if conjugated else Z_SYMBOL


@_to_sympy.register
def _(node: Neg, conjugated: bool) -> sympy.Expr:
    return -_to_sympy(node.operand, conjugated)


@_to_sympy.register
def _(node: BinOp, conjugated: bool) -> sympy.Expr:
    return _BINARY[type(node)](
        _to_sympy(node.left, conjugated), _to_sympy(node.right, conjugated)
    )


@_to_sympy.register
def _(node: Call, conjugated: bool) -> sympy.Expr:
    (arg,) = node.args
    if node.func == "conj":
        return _to_sympy(arg, not conjugated)
    # exp, sin and cos commute with conjugation; log does off its branch cut.
    return _FUNCTIONS[node.func](_to_sympy(arg, conjugated))


def to_sympy(ast: ExprAst) -> sympy.Expr:
    """
    Export an expression to sympy with `z` and `zbar` as independent symbols.

    Conjugation is pushed down to the leaves, so `conj(z)` becomes the symbol `zbar`
    and literals are conjugated. `re`, `im` and `abs2` are rewritten through `z` and
    `conj(z)` first.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import parse, to_sympy

    print(to_sympy(parse("abs2(z) + re(z)")))
    ```
    """
    return _to_sympy(rewrite(ast), False)
