"""Kernel backend selection.

Hot integer kernels (orbit counting, canonical relabelling, bracket state
sums) ship in two flavours: a numba @njit build and a pure NumPy/Python
fallback.  Set KNOTFACET_NUMBA=0 to force the fallback; the default is to
use numba when it imports cleanly.
"""

from __future__ import annotations

import os

_flag = os.environ.get("KNOTFACET_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - environment without numba
        USE_NUMBA = False

if USE_NUMBA:
    def jit_kernel(func):
        return _njit(cache=True)(func)
else:
    def jit_kernel(func):
        return func


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"
