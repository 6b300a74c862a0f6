from __future__ import annotations

import re
from dataclasses import dataclass

from structura.errors import ExpressionParseError
from structura.types import StrEnum


class TokenKind(StrEnum):
    NUMBER = "number"
    IDENTIFIER = "identifier"
    OPERATOR = "operator"
    PAREN = "paren"
    COMMA = "comma"
    END = "end"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    position: int


_TOKEN = re.compile(
    r"""
    (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
    | (?P<identifier>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<operator>[-+*/^])
    | (?P<paren>[()])
    | (?P<comma>,)
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> list[Token]:
    """
    Split expression text into tokens. The last token is always `END`.

    Positions are UTF-8 byte offsets into `source`; whitespace is skipped.
    """
    tokens: list[Token] = []
    pos = 0
    offset = 0
    while pos < len(source):
        if source[pos].isspace():
            offset += len(source[pos].encode())
            pos += 1
            continue
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExpressionParseError(
                f"unexpected character '{source[pos]}'", offset, "number, identifier or operator"
            )
        kind = TokenKind(m.lastgroup)
        tokens.append(Token(kind, m.group(), offset))
        offset += len(m.group().encode())
        pos = m.end()
    tokens.append(Token(TokenKind.END, "", offset))
    return tokens
