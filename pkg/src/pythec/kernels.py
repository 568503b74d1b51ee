"""Select the compiled trial-division kernel, falling back to pure Python.

Set ``PYTHEC_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _trialdiv_py

BACKEND = "python"

if os.environ.get("PYTHEC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _trialdiv as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _trialdiv_py
else:
    _impl = _trialdiv_py

primes_below = _impl.primes_below
trial_divide = _impl.trial_divide

__all__ = ["BACKEND", "primes_below", "trial_divide"]
