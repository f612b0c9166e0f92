"""Kernel backend selection: compiled extension when built, pure Python otherwise.

Set QBLOCKS_PURE=1 in the environment to force the pure-Python kernels.
"""

from __future__ import annotations

import os

if os.environ.get("QBLOCKS_PURE"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    return kernels.BACKEND
