"""Pick the compiled kernels when available, else the pure-Python ones."""

import os

if os.environ.get("SEMITOP_PURE"):
    from . import _pykernels as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
