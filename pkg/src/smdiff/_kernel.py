"""Scan backend selection: compiled extension when available, pure otherwise.

Set SMDIFF_PURE_PYTHON=1 to force the fallback (used by the equivalence tests
and the benchmark).
"""

import os

from . import _scan_py

if os.environ.get("SMDIFF_PURE_PYTHON") == "1":
    _impl = _scan_py
    BACKEND = "python"
else:
    try:
        from . import _scan_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"

scan_range = _impl.scan_range
