from __future__ import annotations

import cmath

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from metrics import ATOL_64  # type: ignore
from strategies import disk_points, expressions  # type: ignore

from structura.errors import ExpressionParseError, NumericalFailureError
from structura.expr import (
    ExprAst,
    ExpressionField,
    TokenKind,
    evaluate,
    parse,
    simplify,
    to_sympy,
    to_text,
    tokenize,
)
from structura.expr.convert import Z_SYMBOL, ZBAR_SYMBOL


def test_tokenize() -> None:
    tokens = tokenize("2.5e-1 * conj(z)")
    assert [t.kind for t in tokens] == [
        TokenKind.NUMBER,
        TokenKind.OPERATOR,
        TokenKind.IDENTIFIER,
        TokenKind.PAREN,
        TokenKind.IDENTIFIER,
        TokenKind.PAREN,
        TokenKind.END,
    ]
    assert [t.position for t in tokens] == [0, 7, 9, 13, 14, 15, 16]


@pytest.mark.parametrize(
    "source, z, expected",
    [
        ("1+2*3", 0j, 7),
        ("2^3^2", 0j, 512),
        ("-2^2", 0j, -4),
        ("2*-z", 1j, -2j),
        ("(1+z)*2", 1.0, 4),
        ("8/2/2", 0j, 2),
        ("1-2-3", 0j, -4),
        ("i*i", 0j, -1),
        ("z*conj(z)", 3 + 4j, 25),
        ("re(z) + im(z)", 3 + 4j, 7),
        ("abs2(z)", 1 + 1j, 2),
        ("pow(z, 2)", 2j, -4),
        ("z^0.5", 4.0, 2),
        ("exp(i*pi)", 0j, -1),
        ("sin(z)^2 + cos(z)^2", 0.3 + 0.2j, 1),
        ("log(z)", -1.0, 1j * np.pi),
    ],
)
def test_parse_and_evaluate(source: str, z: complex, expected: complex) -> None:
    assert evaluate(parse(source), z) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "source, position, message",
    [
        ("z+*2", 2, "unexpected '*'"),
        ("2*^z", 2, "unexpected '^'"),
        ("foo(z)", 0, "unknown identifier 'foo'"),
        ("exp(z", 5, "expected ')'"),
        ("pow(z)", 5, "'pow' takes 2 argument(s), got 1"),
        ("z $ 1", 2, "unexpected character '$'"),
        ("", 0, "unexpected 'end of input'"),
        ("z)", 1, "unexpected ')'"),
        ("(z", 2, "expected ')'"),
        ("1e400", 0, "out of range"),
        ("exp z", 4, "expected '('"),
    ],
)
def test_parse_errors(source: str, position: int, message: str) -> None:
    with pytest.raises(ExpressionParseError) as info:
        parse(source)
    assert info.value.position == position
    assert message in info.value.message
    assert info.value.source == source


def test_parse_error_diagnostic() -> None:
    with pytest.raises(ExpressionParseError) as info:
        parse("z+*2")
    assert info.value.diagnostic() == "z+*2\n  ^ unexpected '*'; expected operand"


def test_positions_are_byte_offsets() -> None:
    # U+00A0 is whitespace taking two bytes in UTF-8
    source = "z +\u00a0*2"
    assert [t.position for t in tokenize("\u00a0z +\u00a01")] == [2, 4, 7, 8]
    with pytest.raises(ExpressionParseError) as info:
        parse(source)
    assert info.value.position == 5
    assert info.value.diagnostic() == f"{source}\n    ^ unexpected '*'; expected operand"


@pytest.mark.parametrize(
    "source, z",
    [("log(0*z)", 1.0), ("1/(z-1)", 1.0), ("z^(-1)", 0j)],
)
def test_evaluation_failures(source: str, z: complex) -> None:
    with pytest.raises(NumericalFailureError) as info:
        evaluate(parse(source), z)
    assert info.value.point == z


def test_array_evaluation_keeps_shape() -> None:
    z = np.array([[0.0, 1.0], [1j, 2.0]])
    values = evaluate(parse("z^2 + 1"), z)
    assert values.shape == (2, 2)
    assert np.allclose(values, z**2 + 1, atol=ATOL_64)
    assert evaluate(parse("3"), z).shape == (2, 2)


def test_array_evaluation_reports_first_failure() -> None:
    with pytest.raises(NumericalFailureError) as info:
        evaluate(parse("1/(z-2)"), np.array([0.0, 1.0, 2.0, 2.0]))
    assert info.value.point == 2.0


@pytest.mark.parametrize(
    "source, expected",
    [
        ("0 + 1*conj(z)*(2*3)", "(conj(z)*6.0)"),
        ("conj(conj(z))", "z"),
        ("--z", "z"),
        ("z^0", "1.0"),
        ("z^1 - 0", "z"),
        ("z/1 * 0", "0.0"),
        ("0 - z", "(-z)"),
        ("exp(0) * z", "z"),
        ("-(2)", "(-2.0)"),
    ],
)
def test_simplify(source: str, expected: str) -> None:
    assert to_text(simplify(parse(source))) == expected


def test_literal_printing() -> None:
    assert to_text(parse("2*i")) == "(2.0*(1.0*i))"
    assert to_text(simplify(parse("1 - 2*i"))) == "(1.0+(-2.0)*i)"
    assert to_text(simplify(parse("3*i"))) == "(3.0*i)"


@settings(deadline=None)
@given(expressions(), disk_points())
def test_printed_text_parses_back(ast: ExprAst, z: complex) -> None:
    expected = evaluate(ast, z)
    assume(cmath.isfinite(expected))
    assert evaluate(parse(to_text(ast)), z) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@settings(deadline=None)
@given(expressions(), disk_points())
def test_simplify_preserves_values(ast: ExprAst, z: complex) -> None:
    expected = evaluate(ast, z)
    assume(cmath.isfinite(expected))
    assert evaluate(simplify(ast), z) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize(
    "source", ["abs2(z) + re(z)", "exp(z*conj(z)) + conj(2*i*z)", "im(z)^2", "sin(conj(z))"]
)
def test_to_sympy_matches_evaluation(source: str) -> None:
    expr = to_sympy(parse(source))
    assert expr.free_symbols <= {Z_SYMBOL, ZBAR_SYMBOL}
    for z in (0.3 + 0.4j, -0.7 + 0.1j):
        value = complex(expr.subs({Z_SYMBOL: z, ZBAR_SYMBOL: z.conjugate()}).evalf())
        assert value == pytest.approx(evaluate(parse(source), z), abs=1e-12)


def test_to_sympy_uses_independent_conjugate() -> None:
    assert to_sympy(parse("z*conj(z)")) == Z_SYMBOL * ZBAR_SYMBOL
    assert to_sympy(parse("conj(exp(z))")) == sympy.exp(ZBAR_SYMBOL)


def test_expression_field() -> None:
    field = ExpressionField.from_text("exp(z*conj(z))")
    assert field.source == "exp(z*conj(z))"
    assert not field.is_constant
    assert field.d_zbar.source == "(exp((z*conj(z)))*z)"
    assert field.derivative("z") is field.d_z
    assert field(1.0) == pytest.approx(np.e)
    assert ExpressionField.from_text("2*pi + i").is_constant
