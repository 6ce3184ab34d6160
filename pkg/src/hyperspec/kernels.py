"""Kernel backend selection.

The compiled extension is preferred; the numpy implementation is used when
it is unavailable or when ``HYPERSPEC_PURE_PYTHON`` is set to a non-empty,
non-``0`` value before import.
"""
import os

from . import _kernels_py

CONVERGED = _kernels_py.CONVERGED
MAX_ITERS = _kernels_py.MAX_ITERS
STALLED = _kernels_py.STALLED
NONFINITE = _kernels_py.NONFINITE

STATUS_NAMES = {
    CONVERGED: "converged",
    MAX_ITERS: "max_iters",
    STALLED: "stalled",
    NONFINITE: "nonfinite",
}


def _load():
    if os.environ.get("HYPERSPEC_PURE_PYTHON", "") not in ("", "0"):
        return _kernels_py, "python"
    try:
        from . import _kernels
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "cython"


backend, BACKEND = _load()


def get_backend(name=None):
    """Return the kernel module for ``name`` ('cython' or 'python'), or the active one."""
    if name is None:
        return backend
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def form_value(idx, w, x, scale):
    return backend.form_value(idx, w, x, scale)


def form_value_grad(idx, w, x, scale):
    return backend.form_value_grad(idx, w, x, scale)


def tangent_residual(x, grad, p):
    return backend.tangent_residual(x, grad, p)


def ascend(idx, w, x0, scale, p, max_iters, grad_tol, alpha0, beta, armijo_c,
           backtrack):
    return backend.ascend(idx, w, x0, scale, p, max_iters, grad_tol, alpha0,
                          beta, armijo_c, backtrack)
