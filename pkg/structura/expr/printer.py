from __future__ import annotations

from functools import singledispatch

from structura.expr.nodes import BinOp, Call, ExprAst, Lit, Neg, Var


def _real(x: float) -> str:
    text = repr(float(x))
    return f"({text})" if text.startswith("-") else text


def _literal(value: complex) -> str:
    if value.imag == 0:
        return _real(value.real)
    imag = f"{_real(value.imag)}*i"
    if value.real == 0:
        return f"({imag})"
    return f"({_real(value.real)}+{imag})"


@singledispatch
def _print(node: ExprAst) -> str:
    raise TypeError(f"Cannot print {type(node).__name__}")


@_print.register
def _(node: Lit) -> str:
    return _literal(node.value)


@_print.register
def _(node: Var) -> str:
    return node.name


@_print.register
def _(node: Neg) -> str:
    return f"(-{_print(node.operand)})"


@_print.register
def _(node: BinOp) -> str:
    return f"({_print(node.left)}{node.symbol}{_print(node.right)})"


@_print.register
def _(node: Call) -> str:
    return f"{node.func}({','.join(_print(a) for a in node.args)})"


def to_text(ast: ExprAst) -> str:
    """Fully parenthesised expression text that `parse` reads back.

    Literals are printed with `repr`, so the parsed text evaluates exactly like `ast`.
    """
    return _print(ast)
