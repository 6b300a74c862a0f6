from __future__ import annotations

from .evaluation import evaluate_field, evaluate_real_field, field_label
from .grid import ComplexPoint, Disk, GridDomain, Rectangle, Shape, make_grid, parse_domain
from .report import ResidualReport, build_report
from .sampled import INVALID, FieldNorm, SampledField, field_norm, norm_lp, sample_field

# Modules to be automatically added to the structura namespace
__all__ = [
    "ComplexPoint",
    "Disk",
    "FieldNorm",
    "GridDomain",
    "Rectangle",
    "ResidualReport",
    "SampledField",
    "Shape",
    "build_report",
    "evaluate_field",
    "evaluate_real_field",
    "field_label",
    "field_norm",
    "make_grid",
    "norm_lp",
    "parse_domain",
    "sample_field",
]
