"""Backend selection: compiled extension if available, NumPy otherwise.

Set PPSHG_PURE_PYTHON=1 to force the pure-Python path (used by the
benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("PPSHG_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

run_steps = _impl.run_steps
COMPILED: bool = _impl.COMPILED
BACKEND: str = "compiled" if COMPILED else "pure-python"
