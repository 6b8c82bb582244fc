"""Backend selection for the hot kernels.

Set ``ZETAMOMENTS_NO_NUMBA=1`` to force the pure-numpy path even when numba is
importable.  Both paths are always importable so they can be compared.
"""

import os
import warnings


class PerformanceWarning(UserWarning):
    pass


_DISABLED = os.environ.get("ZETAMOMENTS_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED

if _DISABLED is False and not HAVE_NUMBA:  # pragma: no cover
    warnings.warn("numba is not available; falling back to numpy kernels", PerformanceWarning)


def njit(*args, **kwargs):
    """``numba.njit(cache=True, nogil=True)`` when numba is installed, identity otherwise.

    The decorated function is compiled even when the numpy backend is selected,
    so the two paths can be benchmarked against each other.
    """
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)

    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
