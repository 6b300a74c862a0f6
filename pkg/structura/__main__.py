from __future__ import annotations

from structura.cli import main

main()
