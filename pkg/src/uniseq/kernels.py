"""Backend dispatch for the sampling kernels.

The environment variable ``UNISEQ_BACKEND`` selects ``numba`` (default
whenever numba imports) or ``numpy``.  ``set_backend`` overrides the
choice at runtime, which the benchmark uses to compare both paths in
one process; both backends generate identical sample streams.
"""

import os

BACKEND_ENV = "UNISEQ_BACKEND"
_VALID = ("numba", "numpy")

_backend = None


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def get_backend() -> str:
    global _backend
    if _backend is None:
        choice = os.environ.get(BACKEND_ENV, "").strip().lower()
        if choice:
            set_backend(choice)
        else:
            _backend = "numba" if _numba_available() else "numpy"
    return _backend


def set_backend(name: str) -> str:
    """Select the kernel backend; returns the previous selection."""
    global _backend
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}; expected one of {_VALID}")
    if name == "numba" and not _numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    previous = _backend
    _backend = name
    return previous


def _impl():
    if get_backend() == "numba":
        from . import kernels_numba as mod
    else:
        from . import kernels_numpy as mod
    return mod


def stats_batch(*args):
    return _impl().run_stats(*args)


def keys_batch(*args):
    return _impl().run_keys(*args)


def sequences_batch(*args):
    return _impl().run_sequences(*args)
