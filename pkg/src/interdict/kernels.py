"""Backend selection for the max-plus folds.

The compiled extension is used when it was built; set ``INTERDICT_PURE=1``
to force the numpy fallback. :func:`use_backend` switches at runtime.
"""
import contextlib
import os

import numpy as np

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

BACKENDS = {"python": python_backend}
if compiled_backend is not None:
    BACKENDS["compiled"] = compiled_backend

if compiled_backend is not None and os.environ.get("INTERDICT_PURE", "") in ("", "0"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_active = BACKENDS[BACKEND]


def _c(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def maxplus_fold(acc, items):
    return _active.maxplus_fold(_c(acc), _c(items))


def cmckp_fold(a0, a1, plain, prop):
    return _active.cmckp_fold(_c(a0), _c(a1), _c(plain), _c(prop))


def set_backend(name):
    global BACKEND, _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    BACKEND = name
    _active = BACKENDS[name]


@contextlib.contextmanager
def use_backend(name):
    previous = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
