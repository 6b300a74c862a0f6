from __future__ import annotations

from functools import singledispatch

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
    call,
    conj,
    is_constant,
)
from structura.expr.simplify import simplify
from structura.types import WirtingerVariable


@singledispatch
def rewrite(node: ExprAst) -> ExprAst:
    """Express `re`, `im`, `abs2` and `pow(a, b)` through z, conj(z) and `^`."""
    raise TypeError(f"Cannot rewrite {type(node).__name__}")


@rewrite.register(Lit)
@rewrite.register(Var)
def _(node: ExprAst) -> ExprAst:
    return node


@rewrite.register
def _(node: Neg) -> ExprAst:
    return Neg(rewrite(node.operand))


@rewrite.register
def _(node: BinOp) -> ExprAst:
    return type(node)(rewrite(node.left), rewrite(node.right))


@rewrite.register
def _(node: Call) -> ExprAst:
    args = tuple(rewrite(a) for a in node.args)
    if node.func == "re":
        return Div(Add(args[0], conj(args[0])), Lit(2))
    if node.func == "im":
        return Div(Sub(args[0], conj(args[0])), Lit(2j))
    if node.func == "abs2":
        return Mul(args[0], conj(args[0]))
    if node.func == "pow":
        return Pow(args[0], args[1])
    return Call(node.func, args)


def _other(wrt: WirtingerVariable) -> WirtingerVariable:
    return WirtingerVariable.ZBAR if wrt == WirtingerVariable.Z else WirtingerVariable.Z


@singledispatch
def _diff(node: ExprAst, wrt: WirtingerVariable) -> ExprAst:
    raise TypeError(f"Cannot differentiate {type(node).__name__}")


@_diff.register
def _(node: Lit, wrt: WirtingerVariable) -> ExprAst:
    return ZERO


@_diff.register
def _(node: Var, wrt: WirtingerVariable) -> ExprAst:
    return ONE if wrt == WirtingerVariable.Z else ZERO


@_diff.register
def _(node: Neg, wrt: WirtingerVariable) -> ExprAst:
    return Neg(_diff(node.operand, wrt))


@_diff.register
def _(node: Add, wrt: WirtingerVariable) -> ExprAst:
    return Add(_diff(node.left, wrt), _diff(node.right, wrt))


@_diff.register
def _(node: Sub, wrt: WirtingerVariable) -> ExprAst:
    return Sub(_diff(node.left, wrt), _diff(node.right, wrt))


@_diff.register
def _(node: Mul, wrt: WirtingerVariable) -> ExprAst:
    a, b = node.left, node.right
    return Add(Mul(_diff(a, wrt), b), Mul(a, _diff(b, wrt)))


@_diff.register
def _(node: Div, wrt: WirtingerVariable) -> ExprAst:
    a, b = node.left, node.right
    return Div(Sub(Mul(_diff(a, wrt), b), Mul(a, _diff(b, wrt))), Mul(b, b))


@_diff.register
def _(node: Pow, wrt: WirtingerVariable) -> ExprAst:
    a, b = node.left, node.right
    if is_constant(b):
        return Mul(Mul(b, Pow(a, Sub(b, ONE))), _diff(a, wrt))
    # a^b = exp(b log a), principal branch.
    log_a = call("log", a)
    return Mul(node, Add(Mul(_diff(b, wrt), log_a), Div(Mul(b, _diff(a, wrt)), a)))


@_diff.register
def _(node: Call, wrt: WirtingerVariable) -> ExprAst:
    (u,) = node.args
    if node.func == "conj":
        return conj(_diff(u, _other(wrt)))
    du = _diff(u, wrt)
    if node.func == "exp":
        outer: ExprAst = node
    elif node.func == "log":
        return Div(du, u)
    elif node.func == "sin":
        outer = call("cos", u)
    elif node.func == "cos":
        outer = Neg(call("sin", u))
    else:
        raise TypeError(f"'{node.func}' must be rewritten before differentiation")
    return Mul(outer, du)


def wirtinger_symbolic(ast: ExprAst, wrt: WirtingerVariable | str) -> ExprAst:
    """
    Exact Wirtinger derivative of an expression, treating z and conj(z) as independent.

    `re`, `im` and `abs2` are first rewritten in terms of z and conj(z); the result is
    passed through `simplify`.

    Arguments:
        ast: Expression to differentiate.
        wrt: `"z"` or `"zbar"`.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import parse, to_text, wirtinger_symbolic

    print(to_text(wirtinger_symbolic(parse("exp(z*conj(z))"), "zbar")))
    ```
    """
    return simplify(_diff(rewrite(ast), WirtingerVariable(wrt)))
