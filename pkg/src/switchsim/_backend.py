"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-numpy twin is
the fallback.  Set ``SWITCHSIM_PURE_PYTHON=1`` to force the fallback (used by
the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("SWITCHSIM_PURE_PYTHON"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"


def kernel_backend() -> str:
    """Name of the kernel implementation selected at import time."""
    return BACKEND
