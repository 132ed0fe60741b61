"""Backend selection for the hot numeric kernels.

Every kernel in ``_kernels`` exists twice: a numba ``@njit`` build and a
pure-NumPy fallback.  The active backend is chosen once, at import time,
from the environment:

    DIVISORLAB_BACKEND=numba   force numba (error if not importable)
    DIVISORLAB_BACKEND=numpy   force the NumPy fallbacks
    unset / auto               numba when available, NumPy otherwise

``benchmarks/bench_backends.py`` times the two paths against each other.
"""

import os

_REQUESTED = os.environ.get("DIVISORLAB_BACKEND", "auto").lower()

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is normally installed
    numba = None
    HAVE_NUMBA = False

if _REQUESTED not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"DIVISORLAB_BACKEND must be 'numba', 'numpy' or unset, got {_REQUESTED!r}"
    )
if _REQUESTED == "numba" and not HAVE_NUMBA:
    raise RuntimeError("DIVISORLAB_BACKEND=numba but numba is not importable")

USE_NUMBA = HAVE_NUMBA and _REQUESTED != "numpy"

BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, else identity.

    The decorated function is only ever *called* on the numba path, but the
    decorator must not blow up at import time on a numpy-only install.
    """
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
