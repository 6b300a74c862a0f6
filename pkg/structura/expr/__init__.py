from __future__ import annotations

from .convert import ZBAR_SYMBOL, Z_SYMBOL, to_sympy
from .differentiate import rewrite, wirtinger_symbolic
from .evaluate import evaluate
from .field import ExpressionField, expression_field
from .nodes import (
    FUNCTIONS,
    Add,
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
from .parser import parse
from .printer import to_text
from .simplify import simplify
from .tokens import Token, TokenKind, tokenize

# Modules to be automatically added to the structura namespace
__all__ = [
    "ExprAst",
    "ExpressionField",
    "Token",
    "TokenKind",
    "evaluate",
    "expression_field",
    "parse",
    "simplify",
    "to_sympy",
    "to_text",
    "tokenize",
    "wirtinger_symbolic",
]
