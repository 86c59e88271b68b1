"""Selects between numba-compiled kernels and the pure-numpy fallback.

Set ``SYNQ_NO_NUMBA=1`` to force the numpy path (useful for debugging and
for environments without a working LLVM).
"""
import os

_FLAG = os.environ.get("SYNQ_NO_NUMBA", "").strip().lower()

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity otherwise.

    The compiled variant is always built when numba exists (so the benchmark
    can compare both); ``USE_NUMBA`` only decides which one the dispatchers call.
    """
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)
