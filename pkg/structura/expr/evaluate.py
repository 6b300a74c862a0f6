from __future__ import annotations

from functools import singledispatch
from typing import Any, Callable

import numpy as np

from structura.errors import NumericalFailureError
from structura.expr.nodes import Add, Call, Div, ExprAst, Lit, Mul, Neg, Pow, Sub, Var
from structura.types import TArray


def _fail_where(mask: Any, z: Any, message: str) -> None:
    if np.any(mask):
        where = np.broadcast_to(z, np.shape(mask))[mask] if np.ndim(mask) else z
        raise NumericalFailureError(message, complex(np.ravel(where)[0]))


def _log(x: Any, z: Any) -> Any:
    _fail_where(np.asarray(x) == 0, z, "log of zero")
    return np.log(x)


_UNARY: dict[str, Callable[[Any, Any], Any]] = {
    "exp": lambda x, z: np.exp(x),
    "log": _log,
    "sin": lambda x, z: np.sin(x),
    "cos": lambda x, z: np.cos(x),
    "conj": lambda x, z: np.conj(x),
    "re": lambda x, z: np.real(x) + 0j,
    "im": lambda x, z: np.imag(x) + 0j,
    "abs2": lambda x, z: x * np.conj(x),
}


@singledispatch
def _eval(node: ExprAst, z: Any) -> Any:
    raise TypeError(f"Cannot evaluate {type(node).__name__}")


@_eval.register
def _(node: Lit, z: Any) -> Any:
    return node.value


@_eval.register
def _(node: Var, z: Any) -> Any:
    return z


@_eval.register
def _(node: Neg, z: Any) -> Any:
    return -_eval(node.operand, z)


@_eval.register
def _(node: Add, z: Any) -> Any:
    return _eval(node.left, z) + _eval(node.right, z)


@_eval.register
def _(node: Sub, z: Any) -> Any:
    return _eval(node.left, z) - _eval(node.right, z)


@_eval.register
def _(node: Mul, z: Any) -> Any:
    return _eval(node.left, z) * _eval(node.right, z)


@_eval.register
def _(node: Div, z: Any) -> Any:
    num, den = _eval(node.left, z), _eval(node.right, z)
    _fail_where(np.asarray(den) == 0, z, "division by zero")
    return num / den


@_eval.register
def _(node: Pow, z: Any) -> Any:
    base, exponent = _eval(node.left, z), _eval(node.right, z)
    return _power(base, exponent, z)


@_eval.register
def _(node: Call, z: Any) -> Any:
    args = [_eval(a, z) for a in node.args]
    if node.func == "pow":
        return _power(args[0], args[1], z)
    return _UNARY[node.func](args[0], z)


def _power(base: Any, exponent: Any, z: Any) -> Any:
    e = np.asarray(exponent)
    if np.all(e.imag == 0) and np.all(e.real == np.round(e.real)):
        # Integer powers stay exact and defined at zero.
        _fail_where((np.asarray(base) == 0) & (e.real < 0), z, "negative power of zero")
        if e.ndim == 0:
            return base ** int(e.real)
        return np.power(base, e.real.astype(int))
    # Principal branch: base^e = exp(e log base).
    return np.exp(exponent * _log(base, z))


def evaluate(ast: ExprAst, z: TArray) -> Any:
    """
    Evaluate an expression at one point or elementwise over an array of points.

    `log` and non-integer powers use the principal branch.

    Raises:
        NumericalFailureError: on `log(0)` or division by an exact zero.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import evaluate, parse

    print(evaluate(parse("z*conj(z)"), 1 + 2j))
    ```
    """
    scalar = np.ndim(z) == 0
    zz = complex(z) if scalar else np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        value = _eval(ast, zz)
    if scalar:
        return complex(value)
    return np.broadcast_to(np.asarray(value, dtype=complex), zz.shape).copy()
