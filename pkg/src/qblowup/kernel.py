"""Backend selection for the localization kernel.

The compiled extension ``qblowup._kernel`` is used when it can be imported;
otherwise the pure-Python implementation is used.  Setting the environment
variable ``QBLOWUP_KERNEL=python`` forces the fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _kernel_py

try:  # pragma: no cover - depends on the build
    if os.environ.get("QBLOWUP_KERNEL", "").lower() == "python":
        raise ImportError("compiled kernel disabled by QBLOWUP_KERNEL")
    from . import _kernel as _kernel_c
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None
    BACKEND = "python"


def available_backends():
    out = ["python"]
    if _kernel_c is not None:
        out.append("cython")
    return out


def get_quiver_sum(backend: str = None):
    backend = backend or BACKEND
    if backend == "python":
        return _kernel_py.quiver_sum
    if backend == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel is not available")
        return _kernel_c.quiver_sum
    raise ValueError(f"unknown backend {backend!r}")


def _freeze(m):
    return tuple(tuple(r) for r in m)


@lru_cache(maxsize=4096)
def _cached(q1, q2, orders, left, bifund, right, vector, backend):
    return get_quiver_sum(backend)(q1, q2, orders, left, bifund, right, vector)


def quiver_sum(q1, q2, orders, left, bifund, right, vector, backend: str = None):
    """Memoized localization sum; see ``_kernel_py`` for the conventions."""
    return _cached(q1, q2, tuple(orders), _freeze(left), tuple(_freeze(b) for b in bifund),
                   _freeze(right), tuple(_freeze(v) for v in vector), backend or BACKEND)


def clear_cache():
    _cached.cache_clear()
