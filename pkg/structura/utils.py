from __future__ import annotations

import numpy as np

from structura.types import TNumber

# Modules to be automatically added to the structura namespace
__all__ = []  # type: ignore

SIGNIFICANT_DIGITS = 17


def json_number(x: TNumber) -> float | dict[str, float]:
    """Convert a number to a JSON friendly value, splitting complex values."""
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(np.real(x)), "im": float(np.imag(x))}
    return float(x)
