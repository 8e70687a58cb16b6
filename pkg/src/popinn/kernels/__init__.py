"""Elementwise dual-arithmetic kernels with backend selection.

The compiled Cython extension is preferred when it was built; the numpy
fallback is used otherwise, or when ``POPINN_PURE_PYTHON=1`` is set.  Both
expose the same functions; ``scripts/bench_backends.py`` compares them.
"""
import os

from . import _np as numpy_backend

compiled_backend = None
try:
    from . import _core as compiled_backend  # type: ignore[no-redef]
except ImportError:
    compiled_backend = None

if compiled_backend is not None and os.environ.get("POPINN_PURE_PYTHON") != "1":
    _impl = compiled_backend
    BACKEND = "compiled"
else:
    _impl = numpy_backend
    BACKEND = "numpy"

tanh_val = _impl.tanh_val
tanh_val_bwd = _impl.tanh_val_bwd
sigmoid_val = _impl.sigmoid_val
sigmoid_val_bwd = _impl.sigmoid_val_bwd
dual_tanh = _impl.dual_tanh
dual_tanh_bwd = _impl.dual_tanh_bwd
dual_sigmoid = _impl.dual_sigmoid
dual_sigmoid_bwd = _impl.dual_sigmoid_bwd
dual_mul = _impl.dual_mul
dual_mul_bwd = _impl.dual_mul_bwd


def get_backend() -> str:
    return BACKEND
