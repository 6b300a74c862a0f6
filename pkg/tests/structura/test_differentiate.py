from __future__ import annotations

import cmath

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from metrics import (  # type: ignore
    ATOL_FIRST,
    ATOL_SECOND,
    ATOL_SYMBOLIC,
    ATOL_SYMBOLIC_NUMERIC,
)
from strategies import EXPRESSION_CORPUS, corpus_points, disk_points, expressions  # type: ignore

from structura.errors import InvalidParameterError
from structura.expr import ExprAst, evaluate, parse, to_sympy, to_text, wirtinger_symbolic
from structura.expr.convert import Z_SYMBOL, ZBAR_SYMBOL
from structura.fields import Rectangle, make_grid
from structura.types import WirtingerVariable
from structura.wirtinger import (
    StepPolicy,
    d2_cross,
    d2_mixed,
    d_wirtinger,
    d_wirtinger_field,
    partial_derivatives,
    wirtinger_derivatives,
)

ORACLE_SYMBOL = {WirtingerVariable.Z: Z_SYMBOL, WirtingerVariable.ZBAR: ZBAR_SYMBOL}


def _oracle(ast: ExprAst, wrt: WirtingerVariable, z: complex) -> complex:
    derivative = sympy.diff(to_sympy(ast), ORACLE_SYMBOL[wrt])
    return complex(derivative.subs({Z_SYMBOL: z, ZBAR_SYMBOL: z.conjugate()}).evalf())


@pytest.mark.parametrize(
    "source, wrt, expected",
    [
        ("z^2", "z", "(2.0*z)"),
        ("z^2", "zbar", "0.0"),
        ("conj(z)", "zbar", "1.0"),
        ("conj(z)", "z", "0.0"),
        ("exp(z*conj(z))", "zbar", "(exp((z*conj(z)))*z)"),
        ("3*z + 1", "z", "3.0"),
        ("abs2(z)", "z", "conj(z)"),
    ],
)
def test_symbolic_rules(source: str, wrt: str, expected: str) -> None:
    assert to_text(wirtinger_symbolic(parse(source), wrt)) == expected


@settings(deadline=None, max_examples=60)
@given(expressions(), disk_points())
def test_symbolic_matches_sympy(ast: ExprAst, z: complex) -> None:
    for wrt in WirtingerVariable:
        value = evaluate(wirtinger_symbolic(ast, wrt), z)
        assume(cmath.isfinite(value) and abs(value) < 1e12)
        assert value == pytest.approx(_oracle(ast, wrt, z), rel=1e-9, abs=ATOL_SYMBOLIC)


@pytest.mark.parametrize("source", EXPRESSION_CORPUS)
def test_corpus_symbolic_matches_central_differences(source: str) -> None:
    ast = parse(source)
    z = corpus_points(100, seed=11, radius=0.9)
    d_z, d_zbar = wirtinger_derivatives(lambda p: evaluate(ast, p), z)
    assert np.max(np.abs(evaluate(wirtinger_symbolic(ast, "z"), z) - d_z)) <= ATOL_SYMBOLIC_NUMERIC
    assert np.max(np.abs(evaluate(wirtinger_symbolic(ast, "zbar"), z) - d_zbar)) <= (
        ATOL_SYMBOLIC_NUMERIC
    )


@pytest.mark.parametrize("source", EXPRESSION_CORPUS)
def test_conjugation_duality(source: str) -> None:
    ast = parse(source)
    z = corpus_points(20, seed=12, radius=0.9)
    conjugated = evaluate(wirtinger_symbolic(parse(f"conj({source})"), "z"), z)
    expected = np.conj(evaluate(wirtinger_symbolic(ast, "zbar"), z))
    assert np.allclose(conjugated, expected, rtol=1e-12, atol=ATOL_SYMBOLIC)


def test_halving_the_step_quarters_the_error() -> None:
    # f = exp(z) conj(z): f_z = exp(z) conj(z), f_zbar = exp(z)
    z0 = 0.3 + 0.2j
    errors = []
    for h1 in (1e-2, 5e-3, 2.5e-3):
        d_z, d_zbar = d_wirtinger(lambda z: np.exp(z) * np.conj(z), z0, StepPolicy(h1=h1))
        errors.append((abs(d_z - np.exp(z0) * np.conj(z0)), abs(d_zbar - np.exp(z0))))
    for coarse, fine in zip(errors, errors[1:]):
        for e_coarse, e_fine in zip(coarse, fine):
            assert 3.5 <= e_coarse / e_fine <= 4.5


def test_d_wirtinger_of_modulus_squared() -> None:
    d_z, d_zbar = d_wirtinger(lambda z: z * np.conj(z), 2 + 1j)
    assert d_z == pytest.approx(2 - 1j, abs=ATOL_FIRST)
    assert d_zbar == pytest.approx(2 + 1j, abs=ATOL_FIRST)


def test_d2_mixed_is_quarter_laplacian() -> None:
    assert d2_mixed(lambda z: z * np.conj(z), 0.4 - 0.3j) == pytest.approx(1.0, abs=ATOL_SECOND)
    assert d2_mixed(lambda z: np.exp(z), 0.4 - 0.3j) == pytest.approx(0.0, abs=ATOL_SECOND)


def test_partials_divide_by_representable_width() -> None:
    # near a large |z| the offset points are not exactly representable
    f_x, f_y = partial_derivatives(lambda z: z, 1e6 + 1e6j, 1e-5)
    assert f_x == pytest.approx(1.0, abs=1e-12)
    assert f_y == pytest.approx(1j, abs=1e-12)


def test_d_wirtinger_field() -> None:
    grid = make_grid(Rectangle(-1.0, 1.0, -1.0, 1.0), 8)
    d_z, d_zbar = d_wirtinger_field(lambda z: z**2 + np.conj(z), grid)
    assert np.allclose(d_z.values, 2 * grid.centers, atol=ATOL_FIRST)
    assert np.allclose(d_zbar.values, 1.0, atol=ATOL_FIRST)


def test_d2_cross_of_a_product() -> None:
    a, b = 0.3 + 0.1j, -0.2 + 0.5j

    def f(p: complex, q: complex) -> complex:
        return p * np.conj(q) + q * q

    assert d2_cross(f, a, b, "z", "zbar") == pytest.approx(1.0, abs=ATOL_SECOND)
    assert d2_cross(f, a, b, "z", "z") == pytest.approx(0.0, abs=ATOL_SECOND)
    assert d2_cross(f, a, b, "zbar", "zbar") == pytest.approx(0.0, abs=ATOL_SECOND)


@pytest.mark.parametrize("h1, h2", [(0.0, 1e-3), (1e-5, -1.0), (float("nan"), 1e-3)])
def test_step_policy_rejects(h1: float, h2: float) -> None:
    with pytest.raises(InvalidParameterError):
        StepPolicy(h1, h2)


def test_relative_steps_scale_with_modulus() -> None:
    policy = StepPolicy(1e-5, 1e-3)
    assert policy.first(0.5) == 1e-5
    assert policy.first(4.0) == pytest.approx(4e-5)
    assert StepPolicy(1e-5, 1e-3, relative=False).second(4.0) == 1e-3
