"""Backend selection for the monomial/support kernels.

The compiled extension is used when it imports; setting ``TROPDIFF_PURE_PYTHON=1``
forces the pure-Python fallback.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("TROPDIFF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

INF = python_backend.INF
mono_mul = _impl.mono_mul
mono_div = _impl.mono_div
mono_divides = _impl.mono_divides
mono_lcm = _impl.mono_lcm
mono_coprime = _impl.mono_coprime
mono_degree = _impl.mono_degree
mono_key = _impl.mono_key
mono_shift = _impl.mono_shift
mono_deriv = _impl.mono_deriv
val_support = _impl.val_support
mono_val = _impl.mono_val

__all__ = [
    "BACKEND", "INF", "mono_mul", "mono_div", "mono_divides", "mono_lcm",
    "mono_coprime", "mono_degree", "mono_key", "mono_shift", "mono_deriv",
    "val_support", "mono_val",
]
