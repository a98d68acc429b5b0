"""Backend selection for the integer tower kernels.

The compiled extension is used when it imports; setting the environment
variable ``FERMAT_TORSION_PURE=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

__all__ = ["KernelTable", "backend", "BACKEND_NAME", "pure", "compiled"]

pure = _kernels_py
compiled = None

if os.environ.get("FERMAT_TORSION_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        compiled = None

backend = compiled if compiled is not None else pure
BACKEND_NAME = "compiled" if compiled is not None else "pure"


class KernelTable:
    """Per-tower multiplication data in the shape the kernels expect."""

    def __init__(self, tower):
        self.dim = tower.dim
        self.raw_dim = tower.raw_dim
        self.raw_offsets = list(tower.raw_offsets)
        self.reduction = [list(r) for r in tower.reduction]
        # |reduced coefficient| <= max|a| * max|b| * bound_factor
        col = [0] * self.dim
        for r in self.reduction:
            for k, c in r:
                col[k] += abs(c)
        self.bound_factor = self.dim * max(col)
        self.native = compiled.make_table(self) if compiled is not None else None
