"""Kernel backend selection.

The compiled extension is preferred; the pure-Python fallback is used when it
is missing or when ``ZONOTOPAL_PURE`` is set (the benchmark uses the latter to
compare both).  Everything downstream imports ``kernels`` from here.
"""

import os

if os.environ.get("ZONOTOPAL_PURE"):
    from . import _fallback as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as kernels

IMPL = kernels.IMPL
