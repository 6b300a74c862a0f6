from __future__ import annotations

import cmath
from functools import singledispatch

from structura.errors import NumericalFailureError
from structura.expr.nodes import (
    ONE,
    ZERO,
    Add,
    BinOp,
    Call,
    Div,
    ExprAst,
    Lit,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
)


def _is(e: ExprAst, value: complex) -> bool:
    return isinstance(e, Lit) and e.value == value


def _fold(node: ExprAst) -> ExprAst:
    """Replace a constant subtree by its value when that value is finite."""
    from structura.expr.evaluate import evaluate

    try:
        value = evaluate(node, 0j)
    except (NumericalFailureError, ArithmeticError, ValueError):
        return node
    if cmath.isfinite(value):
        return Lit(value)
    return node


@singledispatch
def _simplify(node: ExprAst) -> ExprAst:
    raise TypeError(f"Cannot simplify {type(node).__name__}")


@_simplify.register(Lit)
@_simplify.register(Var)
def _(node: ExprAst) -> ExprAst:
    return node


@_simplify.register
def _(node: Neg) -> ExprAst:
    operand = _simplify(node.operand)
    if isinstance(operand, Neg):
        return operand.operand
    if isinstance(operand, Lit):
        return Lit(-operand.value)
    return Neg(operand)


@_simplify.register
def _(node: BinOp) -> ExprAst:
    left, right = _simplify(node.left), _simplify(node.right)
    if isinstance(left, Lit) and isinstance(right, Lit):
        return _fold(type(node)(left, right))
    if isinstance(node, Add):
        if _is(left, 0):
            return right
        if _is(right, 0):
            return left
    elif isinstance(node, Sub):
        if _is(right, 0):
            return left
        if _is(left, 0):
            return _simplify(Neg(right))
    elif isinstance(node, Mul):
        if _is(left, 0) or _is(right, 0):
            return ZERO
        if _is(left, 1):
            return right
        if _is(right, 1):
            return left
    elif isinstance(node, Div):
        if _is(right, 1):
            return left
    elif isinstance(node, Pow):
        if _is(right, 1):
            return left
        if _is(right, 0):
            return ONE
    return type(node)(left, right)


@_simplify.register
def _(node: Call) -> ExprAst:
    args = tuple(_simplify(a) for a in node.args)
    if node.func == "conj" and isinstance(args[0], Call) and args[0].func == "conj":
        return args[0].args[0]
    simplified = Call(node.func, args)
    if all(isinstance(a, Lit) for a in args):
        return _fold(simplified)
    return simplified


def simplify(ast: ExprAst) -> ExprAst:
    """
    Identity and constant folding rewrites.

    Folds constant subtrees with finite values and removes `0*e`, `1*e`, `e+0`, `e-0`,
    `e/1`, `e^1`, `e^0`, double negations and double conjugations. The result evaluates
    like the input wherever both are defined.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import parse, simplify, to_text

    print(to_text(simplify(parse("0 + 1*conj(z)*(2*3)"))))
    ```
    """
    return _simplify(ast)
