from __future__ import annotations

from importlib import import_module

from .cli import *
from .config import *
from .dbar import *
from .errors import *
from .examples import *
from .expr import *
from .fields import *
from .nlaplace import *
from .serialization import *
from .structure import *
from .types import *
from .utils import *
from .wirtinger import *

"""
The imports above fetch the functions defined in the __all__ of each sub-module
to the structura name space. Make sure each added submodule has the respective definition:

    - `__all__ = ["function0", "function1", ...]`

Furthermore, add the submodule to the list below to automatically build
the __all__ of the structura namespace. Make sure to keep alphabetical ordering.
"""

list_of_submodules = [
    ".cli",
    ".config",
    ".dbar",
    ".errors",
    ".examples",
    ".expr",
    ".fields",
    ".nlaplace",
    ".serialization",
    ".structure",
    ".types",
    ".utils",
    ".wirtinger",
]

__all__ = []
for submodule in list_of_submodules:
    __all_submodule__ = getattr(import_module(submodule, package="structura"), "__all__")
    __all__ += __all_submodule__
