"""Backend switch for the compiled kernels.

Set ``SEPGRAPH_DISABLE_NUMBA=1`` before import to force the pure
Python/numpy kernels. numba missing from the environment has the same effect.
"""
import os

_DISABLED = os.environ.get("SEPGRAPH_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:  # pragma: no cover - exercised via env flag in CI
    _numba = None

NUMBA_AVAILABLE = _numba is not None


def njit(func):
    """``numba.njit(cache=True)`` when available, otherwise ``None``."""
    if _numba is None:
        return None
    return _numba.njit(cache=True)(func)


def backend_name():
    return "numba" if NUMBA_AVAILABLE else "python"
