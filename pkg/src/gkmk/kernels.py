"""Backend selection for the sparse term kernels.

The compiled extension is used when it imports; setting ``GKMK_PURE_PYTHON=1``
forces the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("GKMK_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import axpy, divide, linear_map, mul
else:
    try:
        from ._ckernels import axpy, divide, linear_map, mul

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernels import axpy, divide, linear_map, mul

__all__ = ["BACKEND", "axpy", "divide", "linear_map", "mul"]
