from __future__ import annotations

from .cauchy import cauchy_pompeiu_reconstruct
from .pompeiu import PompeiuSolution, QuadratureScheme, pompeiu_solve, verify_dbar

# Modules to be automatically added to the structura namespace
__all__ = [
    "PompeiuSolution",
    "QuadratureScheme",
    "cauchy_pompeiu_reconstruct",
    "pompeiu_solve",
    "verify_dbar",
]
