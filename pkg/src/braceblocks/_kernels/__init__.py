"""Kernel backend selection.

Prefers the compiled extension; falls back to the NumPy implementation
when it is absent. Set BRACEBLOCK_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os

from . import fallback

if os.environ.get("BRACEBLOCK_PURE"):
    _impl = fallback
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = fallback

BACKEND: str = _impl.BACKEND
assoc_violation = _impl.assoc_violation
assoc_violation_samples = _impl.assoc_violation_samples
skew_violation = _impl.skew_violation
skew_violation_samples = _impl.skew_violation_samples
braid_violation = _impl.braid_violation
braid_violation_samples = _impl.braid_violation_samples
cayley_tables = _impl.cayley_tables

__all__ = [
    "BACKEND",
    "assoc_violation",
    "assoc_violation_samples",
    "skew_violation",
    "skew_violation_samples",
    "braid_violation",
    "braid_violation_samples",
    "cayley_tables",
    "fallback",
]
