"""Kernel backend selection.

Two interchangeable backends implement the single-level periodic
filter-and-decimate step and its adjoint: a Cython extension
(``cy_backend``) and a vectorized numpy fallback (``py_backend``).  The
compiled backend is picked at import when available; set
``WAVESHRINK_PURE_PYTHON=1`` to force the fallback.  Both backends use the
same per-element accumulation order, so results agree to within a few ulp.
"""

import os
from contextlib import contextmanager

from . import py_backend

try:
    from . import cy_backend
except ImportError:
    cy_backend = None

_BACKENDS = {"python": py_backend}
if cy_backend is not None:
    _BACKENDS["cython"] = cy_backend

if os.environ.get("WAVESHRINK_PURE_PYTHON"):
    _active = py_backend
else:
    _active = cy_backend if cy_backend is not None else py_backend


def active():
    """Return the backend module currently in use."""
    return _active


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None


@contextmanager
def use_backend(name):
    """Temporarily switch the active kernel backend (for tests/benchmarks)."""
    global _active
    previous = _active
    _active = get_backend(name)
    try:
        yield _active
    finally:
        _active = previous
