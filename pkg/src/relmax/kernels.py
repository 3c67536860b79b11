"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it was built; otherwise,
or when ``RELMAX_PURE_PYTHON=1`` is set, the pure-Python twin is used.
Both expose the same functions with identical results.
"""
import os

from . import _pykernels

if os.environ.get("RELMAX_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
prepare_table = _impl.prepare_table
closure = _impl.closure
right_cosets = _impl.right_cosets
element_orders = _impl.element_orders
extend_hom = _impl.extend_hom

python_kernels = _pykernels


def compiled_kernels():
    """The compiled module, or None if it is unavailable."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels
