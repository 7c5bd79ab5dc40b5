"""Integration kernels: compiled core with a pure-Python fallback.

The compiled extension is preferred; set APSCYL_PURE_PYTHON=1 to force the
numpy fallback (used by the backend-parity tests and the benchmark).
"""

import os

if os.environ.get("APSCYL_PURE_PYTHON"):
    from . import _core_py as _impl
else:
    try:
        from . import _core as _impl
    except ImportError:
        from . import _core_py as _impl

BACKEND = _impl.BACKEND
rk4_uw = _impl.rk4_uw
rk4_scalar = _impl.rk4_scalar
rk4_transfer = _impl.rk4_transfer

__all__ = ["BACKEND", "rk4_uw", "rk4_scalar", "rk4_transfer"]
