from __future__ import annotations

import io
import json
import math
import re
import sys
from pathlib import Path
from typing import IO, Any, Callable, Sequence

import jsonschema
import numpy as np

from structura.errors import NumericalFailureError, StructuraException
from structura.fields import ResidualReport
from structura.logger import get_logger
from structura.types import ReportFormat
from structura.utils import SIGNIFICANT_DIGITS

# Modules to be automatically added to the structura namespace
__all__ = ["emit_report", "report_to_csv", "report_to_json"]

logger = get_logger(__name__)

CSV_HEADER = "x,y,re,im,abs"
STDOUT = "<stdout>"

_NORM = {"type": "number", "minimum": 0}

ReportJSONSchema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "operator": {"type": "string"},
        "grid": {
            "type": "object",
            "properties": {
                "shape": {"enum": ["rect", "disk"]},
                "nx": {"type": "integer", "minimum": 2},
                "ny": {"type": "integer", "minimum": 2},
                "valid_cells": {"type": "integer", "minimum": 1},
            },
            "required": ["shape", "nx", "ny", "valid_cells"],
        },
        "norms": {
            "type": "object",
            "properties": {
                "l2": _NORM,
                "linf": _NORM,
                "lp": {"type": "object", "additionalProperties": _NORM},
            },
            "required": ["l2", "linf"],
        },
        "max": {
            "type": "object",
            "properties": {"x": {"type": "number"}, "y": {"type": "number"}, "abs": _NORM},
            "required": ["x", "y", "abs"],
        },
        "params": {"type": "object"},
    },
    "required": ["operator", "grid", "norms", "max", "params"],
    "additionalProperties": False,
}


def report_dict(report: ResidualReport) -> dict:
    """The report summary, checked against `ReportJSONSchema`."""
    d = report.to_dict()
    try:
        jsonschema.validate(d, ReportJSONSchema)
    except jsonschema.exceptions.ValidationError as e:
        logger.exception(f"Report dict doesnt comply to {ReportJSONSchema} with {e}.")
        raise StructuraException(f"Malformed report for '{report.operator}'") from e
    return d


_FLOAT_MARK = re.compile(r'"\\u0000(\d+)\\u0000"')


def _mark_floats(obj: Any, floats: list[float]) -> Any:
    # Floats are swapped for NUL-delimited markers that `json.dumps` escapes verbatim.
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NumericalFailureError("Report parameters hold non-finite values")
        floats.append(obj)
        return f"\x00{len(floats) - 1}\x00"
    if isinstance(obj, dict):
        return {k: _mark_floats(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark_floats(v, floats) for v in obj]
    return obj


def report_to_json(reports: ResidualReport | Sequence[ResidualReport]) -> str:
    """
    JSON text of one report, or an array of several, keys in the order
    `operator, grid, norms, max, params`. Floats are written with
    `SIGNIFICANT_DIGITS` significant digits.
    """
    if isinstance(reports, ResidualReport):
        payload: dict | list = report_dict(reports)
    else:
        payload = [report_dict(r) for r in reports]
    floats: list[float] = []
    text = json.dumps(_mark_floats(payload, floats), indent=2)
    text = _FLOAT_MARK.sub(lambda m: f"{floats[int(m.group(1))]:.{SIGNIFICANT_DIGITS}g}", text)
    return text + "\n"


def report_to_csv(report: ResidualReport) -> str:
    """Per cell dump of the valid cells, row-major, header `x,y,re,im,abs`."""
    z = report.field.valid_centers()
    values = report.field.valid_values()
    rows = np.column_stack([z.real, z.imag, values.real, values.imag, np.abs(values)])
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        rows,
        fmt=f"%.{SIGNIFICANT_DIGITS}g",
        delimiter=",",
        header=CSV_HEADER,
        comments="",
    )
    return buffer.getvalue()


def _write(text: str, path: Path | None, stream: IO[str]) -> str:
    if path is None:
        stream.write(text)
        return STDOUT
    path.write_text(text)
    logger.info(f"Wrote {path}")
    return str(path)


def save_json(
    reports: Sequence[ResidualReport], path: Path | None, stream: IO[str]
) -> list[str]:
    return [_write(report_to_json(reports[0] if len(reports) == 1 else reports), path, stream)]


def save_csv(reports: Sequence[ResidualReport], path: Path | None, stream: IO[str]) -> list[str]:
    if path is None:
        return [_write("\n".join(report_to_csv(r) for r in reports), None, stream)]
    if len(reports) == 1:
        return [_write(report_to_csv(reports[0]), path, stream)]
    return [
        _write(report_to_csv(r), path.with_name(f"{path.stem}-{k}{path.suffix}"), stream)
        for k, r in enumerate(reports)
    ]


Writer = Callable[[Sequence[ResidualReport], "Path | None", IO[str]], list]

FORMAT_DICT: dict[ReportFormat, tuple[str, Writer]] = {
    ReportFormat.JSON: (".json", save_json),
    ReportFormat.CSV: (".csv", save_csv),
}


def emit_report(
    reports: ResidualReport | Sequence[ResidualReport],
    format: ReportFormat | str = ReportFormat.JSON,
    path: str | Path | None = None,
    stream: IO[str] | None = None,
) -> list[str]:
    """
    Write reports as JSON (one summary or an array of them) or as CSV field dumps.

    Several CSV dumps written to `path` go to `stem-0.csv`, `stem-1.csv`, ...; a path
    without suffix gets the format's suffix. Without `path` the text goes to `stream`
    (standard output by default).

    Arguments:
        reports: One report or several.
        format: `json` or `csv`.
        path: Output file.
        stream: Text stream used when `path` is not given.

    Returns:
        The artifacts written, file paths or `<stdout>`.

    Raises:
        OSError: if the file cannot be written.
    """
    format = ReportFormat(format)
    reports = [reports] if isinstance(reports, ResidualReport) else list(reports)
    if not reports:
        raise StructuraException("Nothing to emit.")
    suffix, save_fn = FORMAT_DICT[format]
    target = None if path is None else Path(path)
    if target is not None and target.suffix == "":
        target = target.with_suffix(suffix)
    return save_fn(reports, target, stream or sys.stdout)
