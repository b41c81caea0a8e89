"""Kernel backend selection.

The compiled extension is preferred; the pure-Python lane is used when the
extension is unavailable or when LVTHERMO_PURE_PYTHON is set (any non-empty
value).  Both lanes consume the same random stream and produce identical
paths for a given seed.
"""

import os

from . import _kernels_py

if os.environ.get("LVTHERMO_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _kernels_py

BACKEND = kernels.BACKEND_NAME
