"""Optional numba acceleration.

Set ``MGK_NUMBA=0`` to force the pure-numpy kernels even when numba is
installed. The flag is read once at import time.
"""

from __future__ import annotations

import os

_flag = os.environ.get("MGK_NUMBA", "1").strip().lower()
_requested = _flag not in ("0", "false", "no", "off")

try:
    if not _requested:
        raise ImportError("disabled via MGK_NUMBA")
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:
    _njit = None
    NUMBA_AVAILABLE = False


def njit(func):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if _njit is None:
        return func
    return _njit(cache=True)(func)


__all__ = ["NUMBA_AVAILABLE", "njit"]
