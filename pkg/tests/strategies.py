from __future__ import annotations

from typing import Any, Callable

import hypothesis.strategies as st
import numpy as np
from hypothesis.strategies._internal import SearchStrategy

from structura.expr.nodes import Add, Call, ExprAst, Lit, Mul, Neg, Sub, Var

MAX_DEPTH = 3
LIT_MIN = -3.0
LIT_MAX = 3.0

UNARY_FUNCTIONS = ["exp", "sin", "cos", "conj", "re", "im", "abs2"]
BINARY_NODES = [Add, Sub, Mul]

REAL_STRATEGY: SearchStrategy[float] = st.floats(
    min_value=LIT_MIN, max_value=LIT_MAX, allow_nan=False, allow_infinity=False
)


@st.composite
def disk_points(draw: Callable[[SearchStrategy[Any]], Any], radius: float = 0.9) -> complex:
    """Points of the open disk |z| < radius."""
    x = draw(st.floats(min_value=-radius, max_value=radius))
    y = draw(st.floats(min_value=-radius, max_value=radius))
    z = complex(x, y)
    if abs(z) >= radius:
        z *= 0.99 * radius / abs(z)
    return z


@st.composite
def literals(draw: Callable[[SearchStrategy[Any]], Any]) -> Lit:
    re = draw(REAL_STRATEGY)
    im = draw(st.one_of(st.just(0.0), REAL_STRATEGY))
    return Lit(complex(re, im))


# A strategy to generate random expression trees. Only functions without branch
# cuts or poles are used, so every tree is defined everywhere.
@st.composite
def expressions(
    draw: Callable[[SearchStrategy[Any]], Any], depth: int = MAX_DEPTH
) -> ExprAst:
    if depth == 0 or draw(st.integers(min_value=0, max_value=3)) == 0:
        return draw(st.one_of(st.just(Var()), literals()))
    kind = draw(st.sampled_from(["unary", "binary", "neg"]))
    if kind == "neg":
        return Neg(draw(expressions(depth - 1)))
    if kind == "unary":
        return Call(draw(st.sampled_from(UNARY_FUNCTIONS)), (draw(expressions(depth - 1)),))
    node = draw(st.sampled_from(BINARY_NODES))
    return node(draw(expressions(depth - 1)), draw(expressions(depth - 1)))


# Fields that are smooth on the closed disk |z| <= 0.9, with moderate higher derivatives.
EXPRESSION_CORPUS = [
    "z^3 - 2*conj(z)",
    "exp(z*conj(z)) + conj(z)",
    "sin(z)*cos(conj(z))",
    "re(z)^2 - im(z)",
    "log(z + 2)",
    "(z + 2)^(1.5)",
    "pow(z + 2, conj(z))",
    "1/(z - 3)",
    "abs2(z)*exp(-z)",
    "conj(z)^2*z + i*z",
    "exp(i*conj(z))*z^2",
    "cos(z*conj(z)) - sin(z)",
    "(z + 1)/(conj(z) + 2)",
    "re(z*z)*im(conj(z)) + 0.5",
    "exp(-0.5*abs2(z))*conj(z)",
    "z^4 - 3*z^2*conj(z) + conj(z)^3",
    "sin(re(z))*cos(im(z))",
    "log(abs2(z) + 1)",
    "pow(conj(z) + 1.5, 2.5)",
    "1/(1 + abs2(z))",
]

STRUCTURE_CORPUS = [
    "conj(z)",
    "0.5*z*conj(z)",
    "1 + 0.3*conj(z) + 0.2*z*conj(z)",
    "exp(0.5*z*conj(z))",
    "2 + 0.2*z^2 + i*conj(z)",
]


def corpus_points(n: int, seed: int = 0, radius: float = 0.8) -> np.ndarray:
    """`n` reproducible points spread uniformly over the disk |z| < radius."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def corpus_triples(n: int = 50, seed: int = 7) -> list[tuple[str, str, complex]]:
    """`n` reproducible (w, K, z) triples drawn from the two corpora."""
    rng = np.random.default_rng(seed)
    points = corpus_points(n, seed)
    return [
        (
            EXPRESSION_CORPUS[rng.integers(len(EXPRESSION_CORPUS))],
            STRUCTURE_CORPUS[rng.integers(len(STRUCTURE_CORPUS))],
            complex(z),
        )
        for z in points
    ]
