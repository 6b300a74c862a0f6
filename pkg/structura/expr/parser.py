from __future__ import annotations

import math

from structura.errors import ExpressionParseError
from structura.expr.nodes import (
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
)
from structura.expr.tokens import Token, TokenKind, tokenize

# Binding powers: ^ > unary - > * / > + -
_INFIX = {"+": (10, Add), "-": (10, Sub), "*": (20, Mul), "/": (20, Div), "^": (40, Pow)}
_PREFIX_MINUS = 30
_RIGHT_ASSOCIATIVE = {"^"}

_CONSTANTS = {"i": Lit(1j), "pi": Lit(math.pi)}


class _Parser:
    """Pratt parser over a token list."""

    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: TokenKind, text: str) -> Token:
        token = self.current
        if token.kind != kind or token.text != text:
            found = token.text or "end of input"
            raise ExpressionParseError(f"expected '{text}', found '{found}'", token.position, text)
        return self.advance()

    def expression(self, rbp: int = 0) -> ExprAst:
        left = self.prefix(self.advance())
        while True:
            token = self.current
            if token.kind != TokenKind.OPERATOR or _INFIX[token.text][0] <= rbp:
                return left
            self.advance()
            lbp, node = _INFIX[token.text]
            right = self.expression(lbp - 1 if token.text in _RIGHT_ASSOCIATIVE else lbp)
            left = node(left, right)

    def prefix(self, token: Token) -> ExprAst:
        if token.kind == TokenKind.NUMBER:
            value = float(token.text)
            if not math.isfinite(value):
                raise ExpressionParseError(
                    f"number '{token.text}' is out of range", token.position, "finite number"
                )
            return Lit(value)
        if token.kind == TokenKind.OPERATOR and token.text == "-":
            return Neg(self.expression(_PREFIX_MINUS))
        if token.kind == TokenKind.PAREN and token.text == "(":
            inner = self.expression()
            self.expect(TokenKind.PAREN, ")")
            return inner
        if token.kind == TokenKind.IDENTIFIER:
            return self.identifier(token)
        found = token.text or "end of input"
        raise ExpressionParseError(f"unexpected '{found}'", token.position, "operand")

    def identifier(self, token: Token) -> ExprAst:
        name = token.text
        if name == "z":
            return Var("z")
        if name in _CONSTANTS:
            return _CONSTANTS[name]
        if name not in FUNCTIONS:
            raise ExpressionParseError(f"unknown identifier '{name}'", token.position, "operand")
        self.expect(TokenKind.PAREN, "(")
        args = [self.expression()]
        while self.current.kind == TokenKind.COMMA:
            self.advance()
            args.append(self.expression())
        closing = self.current
        self.expect(TokenKind.PAREN, ")")
        if len(args) != FUNCTIONS[name]:
            raise ExpressionParseError(
                f"'{name}' takes {FUNCTIONS[name]} argument(s), got {len(args)}",
                closing.position,
                f"{FUNCTIONS[name]} argument(s)",
            )
        return Call(name, tuple(args))


def parse(source: str) -> ExprAst:
    """
    Parse expression text in the variable `z`.

    Grammar: numbers, `z`, the constants `i` and `pi`, the functions
    `exp log sin cos conj re im abs2 pow`, unary minus and the binary operators
    `+ - * / ^` with precedence `^` > unary `-` > `* /` > `+ -`; `^` is right associative.

    Raises:
        ExpressionParseError: with the byte offset of the offending token.

    Example:
    ```python exec="on" source="material-block" result="json"
    from structura.expr import parse

    print(repr(parse("z + 1")))
    ```
    """
    try:
        parser = _Parser(source)
        ast = parser.expression()
        token = parser.current
        if token.kind != TokenKind.END:
            raise ExpressionParseError(f"unexpected '{token.text}'", token.position, "operator")
    except ExpressionParseError as e:
        e.source = source
        raise
    return ast
