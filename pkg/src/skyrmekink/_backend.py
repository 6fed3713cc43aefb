"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when the
extension is unavailable or when ``SKYRMEKINK_PURE_PY`` is set (any nonempty
value). Both expose the same functions with identical semantics.
"""

import os

if os.environ.get("SKYRMEKINK_PURE_PY"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"


def backend_name() -> str:
    """Name of the kernel backend in use: ``"cython"`` or ``"python"``."""
    return BACKEND
