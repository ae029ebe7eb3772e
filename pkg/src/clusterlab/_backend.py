"""Select the exact-minimization kernel at import time.

The compiled extension is preferred; the pure-Python twin is the fallback.
Set CLUSTERLAB_BACKEND=pure (or native) to force a choice.
"""

from __future__ import annotations

import os

from . import _pure

_FORCED = os.environ.get("CLUSTERLAB_BACKEND", "").strip().lower()

if _FORCED == "pure":
    kernel = _pure
elif _FORCED == "native":
    from . import _native as kernel  # noqa: F401  (ImportError is the answer)
else:
    try:
        from . import _native as kernel
    except ImportError:
        kernel = _pure


def backend_name() -> str:
    return kernel.BACKEND_NAME


def get_kernel(name: str | None = None):
    """The active kernel, or a specific one by name (for benchmarks/tests)."""
    if name is None:
        return kernel
    if name == "pure":
        return _pure
    if name == "native":
        from . import _native
        return _native
    raise ValueError(f"unknown backend {name!r}")
