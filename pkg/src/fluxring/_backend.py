"""Kernel backend selection.

The compiled extension is preferred when importable; the NumPy fallback is
used otherwise.  Setting the environment variable FLUXRING_PURE_PYTHON to a
non-empty value forces the fallback (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FLUXRING_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return kernels.BACKEND
