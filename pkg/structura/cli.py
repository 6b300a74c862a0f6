from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import IO, Callable, NoReturn, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from structura.config import CommandConfig
from structura.dbar import (
    PompeiuSolution,
    cauchy_pompeiu_reconstruct,
    pompeiu_solve,
    verify_dbar,
)
from structura.errors import (
    ExpressionParseError,
    NumericalFailureError,
    StructuraException,
)
from structura.examples import EXAMPLES, run_example
from structura.expr import ExpressionField, to_sympy
from structura.fields import (
    Disk,
    GridDomain,
    Rectangle,
    ResidualReport,
    SampledField,
    build_report,
    parse_domain,
)
from structura.fields.sampled import INVALID
from structura.logger import get_logger
from structura.nlaplace import (
    MultiStructuralFunction,
    NcrPair,
    d_structural_nd,
    eta,
    fg_cr_check,
    fg_from_structure,
    laplace_rhs_check,
    ncr_residual,
    nl_laplace_residual,
    nonlinear_laplace,
    nonlinear_laplace_nd,
    psi,
    separable_field,
)
from structura.serialization import emit_report
from structura.structure import (
    CbvCoefficients,
    StructuralFunction,
    cbv_from_real,
    cbv_residual,
    coefficients_from_structure,
    construct_solution,
    d_structural,
    dx_dy_operators,
    exterior_differential,
    holo_residual,
    k_transform,
    k_transform_parts,
    real_cr_residual,
    structural_derivatives,
)
from structura.types import FieldCombination, HoloMode, NcrConvention, ReportFormat
from structura.wirtinger import d_wirtinger

# Modules to be automatically added to the structura namespace
__all__ = ["RunOutcome", "main", "run"]

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3


class UsageError(StructuraException):
    pass


@dataclass(frozen=True)
class RunOutcome:
    """Exit code and the artifacts written by one invocation."""

    exit_code: int
    artifacts: list = field(default_factory=list)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _expression(text: str | None, flag: str) -> ExpressionField:
    if text is None:
        raise UsageError(f"--{flag} is required")
    return ExpressionField.from_text(text)


def _structure(cfg: CommandConfig) -> StructuralFunction:
    if cfg.K is not None and cfg.kappa is not None:
        raise UsageError("give either --K or --kappa, not both")
    if cfg.kappa is not None:
        return StructuralFunction.from_kappa(cfg.kappa)
    if cfg.K is not None:
        return StructuralFunction.from_expression(cfg.K)
    raise UsageError("one of --K or --kappa is required")


def _point(text: str) -> complex:
    try:
        if "," in text:
            x, y = text.split(",")
            return complex(float(x), float(y))
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise UsageError(f"cannot read point '{text}'; use 'x,y' or '0.3+0.1i'") from e


def _points(cfg: CommandConfig, grid: GridDomain) -> list[complex]:
    if cfg.at:
        return [_point(p) for p in cfg.at]
    x_min, x_max, y_min, y_max = grid.bounds
    return [complex(0.5 * (x_min + x_max), 0.5 * (y_min + y_max))]


def _nearest_center(grid: GridDomain, z: complex) -> complex:
    inside = grid.centers[grid.mask]
    return complex(inside[int(np.argmin(np.abs(inside - z)))])


def _parts(w: ExpressionField) -> tuple[ExpressionField, ExpressionField]:
    return (
        ExpressionField.from_text(f"re({w.source})"),
        ExpressionField.from_text(f"im({w.source})"),
    )


def _multi(
    cfg: CommandConfig, w: ExpressionField, S: StructuralFunction
) -> tuple[object, MultiStructuralFunction, tuple[complex, complex]] | None:
    if cfg.w2 is None:
        return None
    combination = FieldCombination(cfg.combination)
    neutral = "1" if combination == FieldCombination.PRODUCT else "0"
    S2 = StructuralFunction.from_expression(cfg.K2 or neutral)
    W = separable_field(w, _expression(cfg.w2, "w2"), combination=combination)
    MS = MultiStructuralFunction.separable(S, S2, combination=combination)
    z1 = _point(cfg.at[0]) if cfg.at else 0j
    z2 = _point(cfg.at2) if cfg.at2 else 0j
    return W, MS, (z1, z2)


def check_holo(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    w, S, grid, policy = _expression(cfg.w, "w"), _structure(cfg), cfg.make_grid(), cfg.policy
    reports = [holo_residual(w, S, grid, policy, HoloMode(cfg.mode))]
    if S.is_kappa:
        u, v = _parts(w)
        alpha, beta = _parts(S.kappa)  # type: ignore[arg-type]
        reports.extend(real_cr_residual(u, v, alpha, beta, grid, policy))
    return reports


def residual_cbv(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    w, grid, policy = _expression(cfg.w, "w"), cfg.make_grid(), cfg.policy
    if cfg.kappa is not None:
        coeffs = cbv_from_real(coefficients_from_structure(_structure(cfg), policy))
    elif cfg.A is not None:
        coeffs = CbvCoefficients(
            _expression(cfg.A, "A"),
            _expression(cfg.B or "0", "B"),
            _expression(cfg.C or "1", "C"),
        )
    else:
        raise UsageError("residual-cbv needs --kappa or --A (with optional --B, --C)")
    return [cbv_residual(w, coeffs, grid, policy)]


def construct(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    phi, S, grid, policy = _expression(cfg.phi, "phi"), _structure(cfg), cfg.make_grid(), cfg.policy
    w = construct_solution(phi, S)
    reports = [holo_residual(w, S, grid, policy, HoloMode(cfg.mode))]
    if cfg.w is not None:
        given = _expression(cfg.w, "w")
        z = grid.centers[grid.mask]
        w_values, K_values = given(z), S(z)
        transformed = np.array([k_transform(a, b) for a, b in zip(w_values, K_values)])
        u, v = k_transform_parts(w_values.real, w_values.imag, K_values.real, K_values.imag)
        values = np.full(grid.size, INVALID)
        values[grid.mask] = transformed
        params = {
            "w": given.source,
            **S.params(),
            "split_mismatch": float(np.max(np.abs(u + 1j * v - transformed))),
        }
        reports.append(build_report("k-transform", SampledField(grid, values), params))
    return reports


def diff(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    w, S, grid, policy = _expression(cfg.w, "w"), _structure(cfg), cfg.make_grid(), cfg.policy
    points = []
    for z0 in _points(cfg, grid):
        d_z, d_zbar = d_structural(w, S, z0, policy)
        form = exterior_differential(w, S, z0, policy)
        plain = d_wirtinger(w, z0, policy)
        entry: dict = {
            "at": z0,
            "d_structural": {"z": d_z, "zbar": d_zbar},
            "exterior": {"dz": form.c_z, "dzbar": form.c_zbar},
            "wirtinger": {"z": plain.d_z, "zbar": plain.d_zbar},
        }
        if S.is_kappa:
            entry["dx_dy"] = dict(zip(("x", "y"), dx_dy_operators(w, S, z0, policy)))
        points.append(entry)
    params: dict = {
        "w": w.source,
        **S.params(),
        **policy.params(),
        "w_z": w.d_z.source,
        "w_zbar": w.d_zbar.source,
        "w_zbar_sympy": str(to_sympy(w.d_zbar.ast)),
        "points": points,
    }
    multi = _multi(cfg, w, S)
    if multi is not None:
        W, MS, point = multi
        params["several"] = {
            "at": list(point),
            "d_structural": [
                {wrt: d_structural_nd(W, MS, point, i, wrt, policy) for wrt in ("z", "zbar")}
                for i in range(2)
            ],
        }
    z = grid.centers[grid.mask]
    fields = structural_derivatives(w, S, z, policy)
    reports = []
    for name, values in zip(("structural-dz", "structural-dzbar"), fields):
        full = np.full(grid.size, INVALID)
        full[grid.mask] = values
        reports.append(build_report(name, SampledField(grid, full), params))
    return reports


def laplace(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    w, S, grid, policy = _expression(cfg.w, "w"), _structure(cfg), cfg.make_grid(), cfg.policy
    report = nl_laplace_residual(w, S, grid, policy)
    report.params["points"] = [
        {
            "at": z0,
            "psi": psi(S, z0, policy),
            "eta": eta(S, z0, policy),
            "nonlinear_laplace": nonlinear_laplace(w, S, z0, policy),
        }
        for z0 in _points(cfg, grid)
    ]
    multi = _multi(cfg, w, S)
    if multi is not None:
        W, MS, point = multi
        report.params["several"] = {
            "at": list(point),
            "nonlinear_laplace": [
                [nonlinear_laplace_nd(W, MS, point, i, j, policy) for j in range(2)]
                for i in range(2)
            ],
        }
    return [report]


def _pair(cfg: CommandConfig, grid: GridDomain) -> NcrPair:
    if cfg.f is not None and cfg.g is not None:
        f, g = _expression(cfg.f, "f"), _expression(cfg.g, "g")
        return NcrPair(
            lambda u, v: np.real(f(u + 1j * v)),
            lambda u, v: np.real(g(u + 1j * v)),
            f"f={f.source},g={g.source}",
        )
    if cfg.kappa is not None:
        return NcrPair.from_structure(_structure(cfg), _points(cfg, grid)[0], cfg.policy)
    raise UsageError("ncr needs --f and --g, or --kappa")


def ncr(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    w, grid, policy = _expression(cfg.w, "w"), cfg.make_grid(), cfg.policy
    u, v = _parts(w)
    pair = _pair(cfg, grid)
    box = parse_domain(cfg.box)
    if not isinstance(box, Rectangle):
        raise UsageError("--box must be a rectangle 'rect:u0,u1,v0,v1'")
    reports = [
        *ncr_residual(u, v, pair, grid, policy),
        *fg_cr_check(pair, box, int(cfg.grid), NcrConvention(cfg.convention)),  # type: ignore
        *laplace_rhs_check(u, v, pair, grid, policy),
    ]
    if cfg.kappa is not None and cfg.f is None:
        S, z0 = _structure(cfg), _points(cfg, grid)[0]
        w0 = complex(w(z0))
        f0, g0 = fg_from_structure(S, w0.real, w0.imag, z0, policy)
        reports[0].params["fg_at_point"] = {"at": z0, "w": w0, "f": f0, "g": g0}
    return reports


def solve_dbar(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    phi, grid, policy = _expression(cfg.phi, "phi"), cfg.make_grid(), cfg.policy
    solution = PompeiuSolution(phi, grid)
    w = _expression(cfg.w, "w") if cfg.w is not None else None
    if w is not None and not isinstance(grid.shape, Disk):
        raise UsageError("--w reconstruction needs a disk domain")
    points = []
    for requested in _points(cfg, grid):
        center = _nearest_center(grid, requested)
        entry: dict = {
            "requested": requested,
            "center": center,
            "h": pompeiu_solve(phi, grid, center),
        }
        if w is not None:
            entry["w_reconstructed"] = cauchy_pompeiu_reconstruct(
                w, grid, center, policy, cfg.n_boundary
            )
            entry["w"] = w(center)
        points.append(entry)
    report = verify_dbar(solution, phi, grid, policy, cfg.margin)
    report.params["points"] = points
    return [report]


def examples(cfg: CommandConfig, out: IO[str]) -> list[ResidualReport]:
    if cfg.action == "list":
        table = Table(title="Built-in structural examples")
        for column in ("N", "K", "dK/dzbar", "Phi", "domain"):
            table.add_column(column)
        for ex in EXAMPLES.values():
            table.add_row(str(ex.number), ex.K, ex.K_zbar, ex.phi, ex.domain)
        Console(file=out, width=120).print(table)
        return []
    if cfg.number is None:
        raise UsageError("examples run needs an example number")
    return [run_example(cfg.number, int(cfg.grid), cfg.policy)]  # type: ignore[arg-type]


Handler = Callable[[CommandConfig, IO[str]], list]

# Subcommand -> (handler, operations it binds).
OPERATIONS: dict[str, tuple[Handler, tuple[Callable, ...]]] = {
    "check-holo": (check_holo, (holo_residual, real_cr_residual)),
    "residual-cbv": (residual_cbv, (cbv_residual, coefficients_from_structure, cbv_from_real)),
    "construct": (construct, (construct_solution, k_transform, k_transform_parts)),
    "diff": (
        diff,
        (
            d_structural,
            structural_derivatives,
            exterior_differential,
            dx_dy_operators,
            d_structural_nd,
        ),
    ),
    "laplace": (
        laplace,
        (nl_laplace_residual, nonlinear_laplace, psi, eta, nonlinear_laplace_nd, separable_field),
    ),
    "ncr": (ncr, (ncr_residual, fg_from_structure, fg_cr_check, laplace_rhs_check)),
    "solve-dbar": (solve_dbar, (pompeiu_solve, verify_dbar, cauchy_pompeiu_reconstruct)),
    "examples": (examples, (run_example,)),
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w", help="field w(z)")
    p.add_argument("--K", help="structural function K(z)")
    p.add_argument("--kappa", help="structural function given as K = 1 + kappa(z)")
    p.add_argument(
        "--domain", default="rect:-1,1,-1,1", help="'rect:x0,x1,y0,y1' or 'disk:cx,cy,r'"
    )
    p.add_argument("--grid", type=int, help="cells per axis (default: $STRUCTURA_GRID or 64)")
    p.add_argument("--h1", type=float, default=1e-5, help="first derivative step")
    p.add_argument("--h2", type=float, default=1e-3, help="second derivative step")
    p.add_argument("--format", choices=ReportFormat.list(), default=ReportFormat.JSON.value)
    p.add_argument("--output", help="output file (default: standard output)")
    p.add_argument("--at", action="append", default=[], help="point 'x,y' or '0.3+0.1i'")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="structura", description="Structural complex analysis residuals and solvers."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    parsers = {}
    for name, (_, operations) in OPERATIONS.items():
        bound = ", ".join(op.__name__ for op in operations)
        parsers[name] = sub.add_parser(name, description=f"Operations: {bound}.")
        _add_common(parsers[name])
    for name in ("check-holo", "construct"):
        parsers[name].add_argument("--mode", choices=HoloMode.list(), default=HoloMode.REDUCED)
    parsers["construct"].add_argument("--phi", help="entire function Phi(z)")
    for name in ("residual-cbv",):
        for flag in ("A", "B", "C"):
            parsers[name].add_argument(f"--{flag}", help=f"coefficient {flag}(z)")
    for name in ("diff", "laplace"):
        parsers[name].add_argument("--w2", help="factor of w in the second variable")
        parsers[name].add_argument("--K2", help="factor of K in the second variable")
        parsers[name].add_argument("--at2", help="second coordinate of the point")
        parsers[name].add_argument(
            "--combination", choices=FieldCombination.list(), default=FieldCombination.PRODUCT
        )
    parsers["ncr"].add_argument("--f", help="f(u, v) as an expression in z = u + i v")
    parsers["ncr"].add_argument("--g", help="g(u, v) as an expression in z = u + i v")
    parsers["ncr"].add_argument("--box", default="rect:-1,1,-1,1", help="(u, v) box")
    parsers["ncr"].add_argument(
        "--convention", choices=NcrConvention.list(), default=NcrConvention.STANDARD
    )
    parsers["solve-dbar"].add_argument("--phi", help="right hand side phi(z)")
    parsers["solve-dbar"].add_argument(
        "--margin", type=float, default=None, help="interior margin (default: 0.1 x inradius)"
    )
    parsers["solve-dbar"].add_argument("--n-boundary", type=int, default=1024)
    parsers["examples"].add_argument("action", choices=["run", "list"])
    parsers["examples"].add_argument("number", nargs="?", type=int)
    return parser


def parse_config(argv: Sequence[str]) -> CommandConfig:
    namespace = build_parser().parse_args(list(argv))
    values = {k: (str(v) if hasattr(v, "value") else v) for k, v in vars(namespace).items()}
    return CommandConfig.from_dict(values)


def run(
    argv: Sequence[str] | None = None,
    stdout: IO[str] | None = None,
    stderr: IO[str] | None = None,
) -> RunOutcome:
    """
    Run one CLI invocation and map failures to exit codes: 1 usage, 2 expression parse
    error, 3 numerical or I/O failure.
    """
    out = stdout or sys.stdout
    console = Console(file=stderr or sys.stderr, soft_wrap=True, highlight=False)
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        logger.debug(f"Running '{cfg.subcommand}' with {cfg}")
        handler, _ = OPERATIONS[cfg.subcommand]
        reports = handler(cfg, out)
        broken = [r.operator for r in reports if not r.is_finite()]
        if broken:
            raise NumericalFailureError(f"Non-finite norms in {', '.join(broken)}")
        artifacts = emit_report(reports, cfg.format, cfg.output, out) if reports else []
    except SystemExit as e:
        return RunOutcome(int(e.code or 0))
    except ExpressionParseError as e:
        console.print(e.diagnostic(), markup=False)
        return RunOutcome(EXIT_PARSE)
    except (NumericalFailureError, OSError) as e:
        console.print(f"error: {e}", markup=False)
        return RunOutcome(EXIT_NUMERICAL)
    except StructuraException as e:
        console.print(f"usage error: {e}", markup=False)
        return RunOutcome(EXIT_USAGE)
    return RunOutcome(EXIT_OK, artifacts)


def main() -> None:
    sys.exit(run().exit_code)
