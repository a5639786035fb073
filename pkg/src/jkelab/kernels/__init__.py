"""Hot numeric kernels with backend selection at import time.

Prefers the compiled Cython extension (``jkelab.kernels._fast``) and falls
back to the NumPy reference implementations when the extension is absent.
Set ``JKELAB_PURE_PYTHON=1`` to force the reference backend, e.g. for
benchmark comparisons.

Both backends are bit-identical; see ``tests/test_kernels.py``.
"""

import os

from . import reference

BACKEND = "python"

if os.environ.get("JKELAB_PURE_PYTHON", "0") != "1":
    try:
        from . import _fast

        BACKEND = "compiled"
    except ImportError:
        _fast = None

if BACKEND == "compiled":
    quantize_midrise = _fast.quantize_midrise
    unpack_symbols = _fast.unpack_symbols
else:
    quantize_midrise = reference.quantize_midrise
    unpack_symbols = reference.unpack_symbols


def backend():
    """Name of the active kernel backend: "compiled" or "python"."""
    return BACKEND
