"""Kernel selection: the compiled module when importable, else pure Python.

Set ``GCCODES_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("GCCODES_PURE_PYTHON") != "1":
    kernels = compiled_kernels
    BACKEND = "cython"
else:
    kernels = _pykernels
    BACKEND = "python"


def available():
    """Names and modules of every importable backend."""
    out = {"python": python_kernels}
    if compiled_kernels is not None:
        out["cython"] = compiled_kernels
    return out
