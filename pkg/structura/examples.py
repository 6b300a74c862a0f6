from __future__ import annotations

from dataclasses import dataclass

from structura.errors import InvalidParameterError
from structura.expr import ExpressionField
from structura.fields import GridDomain, ResidualReport, make_grid, parse_domain
from structura.logger import get_logger
from structura.structure import (
    ConstructedSolution,
    StructuralFunction,
    construct_solution,
    holo_residual,
)
from structura.wirtinger import DEFAULT_POLICY, StepPolicy

# Modules to be automatically added to the structura namespace
__all__ = ["EXAMPLES", "StructuralExample", "run_example"]

logger = get_logger(__name__)


@dataclass(frozen=True)
class StructuralExample:
    """A built-in structural function paired with a solution `Phi exp(-K)`.

    Attributes:
        number: Catalogue number.
        K: Structural function.
        K_zbar: Closed form of `dK/dzbar`.
        phi: Entire factor of the solution.
        domain: Domain the solution is checked on.
        note: One line description.
    """

    number: int
    K: str
    K_zbar: str
    phi: str
    domain: str
    note: str

    def structure(self) -> StructuralFunction:
        return StructuralFunction.from_expression(self.K)

    def witness(self) -> ConstructedSolution:
        return construct_solution(ExpressionField.from_text(self.phi), self.structure())

    def grid(self, n: int) -> GridDomain:
        return make_grid(parse_domain(self.domain), n)


EXAMPLES: dict[int, StructuralExample] = {
    1: StructuralExample(
        1,
        "exp(z*conj(z))",
        "z*exp(z*conj(z))",
        "1",
        # exp(|z|^2) grows fast; the witness exp(-K) is checked on a smaller disk.
        "disk:0,0,0.75",
        "K = exp(|z|^2): w_zbar + z exp(|z|^2) w = 0",
    ),
    2: StructuralExample(
        2,
        "conj(z)",
        "1",
        "1",
        "disk:0,0,1",
        "K = conj(z): w_zbar + w = 0",
    ),
    3: StructuralExample(
        3,
        "exp(z*conj(z))+conj(z)",
        "z*exp(z*conj(z))+1",
        "z",
        "disk:0,0,1",
        "K = exp(|z|^2) + conj(z): w_zbar + (z exp(|z|^2) + 1) w = 0",
    ),
}


def run_example(
    number: int, n: int = 64, policy: StepPolicy = DEFAULT_POLICY
) -> ResidualReport:
    """
    Structural holomorphy residual of a built-in example on its domain.

    The report parameters record the example number, the closed form of `dK/dzbar` and
    the derivative computed symbolically from K.

    Raises:
        InvalidParameterError: for an unknown example number.
    """
    if number not in EXAMPLES:
        raise InvalidParameterError(
            f"Unknown example {number}; choose one of {sorted(EXAMPLES)}."
        )
    example = EXAMPLES[number]
    logger.info(f"Running example {number}: {example.note}")
    report = holo_residual(example.witness(), example.structure(), example.grid(n), policy)
    report.params.update(example=number, K_zbar_closed_form=example.K_zbar, phi=example.phi)
    return report
