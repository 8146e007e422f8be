"""Reduction kernels: the compiled extension when built, pure Python otherwise.

Set ``ALGVAR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("ALGVAR_PURE_PYTHON"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _pykernels

IMPLEMENTATION = kernels.IMPLEMENTATION

__all__ = ["kernels", "IMPLEMENTATION", "_pykernels"]
