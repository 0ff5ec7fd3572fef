"""Backend selection for the numerical kernels.

Two interchangeable backends expose the functions in ``stylus._kernels``:

``numba``
    A fresh copy of the module with every kernel wrapped in
    ``numba.njit(cache=True, nogil=True)``. Chosen by default when numba
    imports cleanly.
``python``
    The plain module, running the same source under the interpreter.

Set ``STYLUS_NO_NUMBA=1`` (or call :func:`set_backend`) to force the pure
path. ``nogil`` lets leave-one-out folds run on real threads.
"""

import importlib.util
import os
import warnings

import numpy as np

from . import _kernels as _py_kernels

_FLAG = "STYLUS_NO_NUMBA"

_backends = {}
_active = None


class _ErrstateWrapper:
    """Proxy that runs python-backend kernels with integer overflow warnings
    silenced; the splitmix64 state update wraps mod 2**64 by design."""

    def __init__(self, module):
        self._module = module
        self._cache = {}

    def __getattr__(self, name):
        try:
            return self._cache[name]
        except KeyError:
            pass
        fn = getattr(self._module, name)
        if not callable(fn):
            return fn

        def wrapped(*args):
            with np.errstate(over="ignore"):
                return fn(*args)

        wrapped.__name__ = name
        self._cache[name] = wrapped
        return wrapped


def _build_python():
    return _ErrstateWrapper(_py_kernels)


def _build_numba():
    from numba import njit

    spec = importlib.util.find_spec("stylus._kernels")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    for name in mod.KERNEL_NAMES:
        setattr(mod, name, njit(cache=True, nogil=True)(getattr(mod, name)))
    return mod


def numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _default_name():
    if os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes"):
        return "python"
    return "numba" if numba_available() else "python"


def set_backend(name):
    """Select 'numba' or 'python'; returns the active backend name."""
    global _active
    if name not in ("numba", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not numba_available():
        warnings.warn("numba unavailable, staying on the python backend")
        name = "python"
    if name not in _backends:
        _backends[name] = _build_numba() if name == "numba" else _build_python()
    _active = name
    return _active


def backend_name():
    if _active is None:
        set_backend(_default_name())
    return _active


def get():
    """The active kernel namespace."""
    if _active is None:
        set_backend(_default_name())
    return _backends[_active]


def get_named(name):
    """A specific backend, independent of the active selection."""
    if name not in ("numba", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not numba_available():
        raise RuntimeError("numba backend requested but numba is unavailable")
    if name not in _backends:
        _backends[name] = _build_numba() if name == "numba" else _build_python()
    return _backends[name]


def seed_state(seed, stream=0):
    """Fresh splitmix64 state from a 64-bit seed and a stream tag."""
    s = (int(seed) ^ (0x9E3779B97F4A7C15 * (int(stream) + 1))) \
        & 0xFFFFFFFFFFFFFFFF
    return np.array([s], dtype=np.uint64)
