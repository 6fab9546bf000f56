"""Backend selection for the hot kernels.

The compiled ``_kernel`` extension is used when it was built; otherwise the
numpy/pure-Python ``_kernel_py`` module is used. Setting the environment
variable ``ANDERSON_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernel_py

_impl = _kernel_py
if not os.environ.get("ANDERSON_PURE_PYTHON"):
    try:
        from . import _kernel as _impl
    except ImportError:  # extension not built
        pass

BACKEND = "python" if _impl is _kernel_py else "cython"

xgcd = _impl.xgcd
poly_mul = _impl.poly_mul
solve_mod = _impl.solve_mod
regular_scan = _impl.regular_scan
vnr_scan = _impl.vnr_scan

__all__ = ["BACKEND", "xgcd", "poly_mul", "solve_mod", "regular_scan", "vnr_scan"]
