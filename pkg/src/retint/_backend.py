"""Pick the kernel implementation at import time.

Set ``RETINT_BACKEND=python`` to force the pure-Python kernels even when
the compiled extension is importable.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("RETINT_BACKEND", "").lower() == "python":
        return _pykernels, "python"
    try:
        from . import _kernels
    except ImportError:
        return _pykernels, "python"
    return _kernels, "cython"


kernels, BACKEND = _load()

__all__ = ["kernels", "BACKEND", "_pykernels"]
