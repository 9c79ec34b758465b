"""Scoring-kernel selection: compiled extension if available, NumPy otherwise.

Set VERSESMITH_PURE_PYTHON=1 to force the NumPy fallback (used by the
benchmark and by tests that exercise both paths).
"""

from __future__ import annotations

import os

if os.environ.get("VERSESMITH_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

KERNEL_BACKEND: str = _impl.BACKEND
interpolated_distribution = _impl.interpolated_distribution
