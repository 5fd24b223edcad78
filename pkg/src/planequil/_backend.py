"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback is
used otherwise.  ``PLANEQUIL_BACKEND=python`` forces the fallback and
``PLANEQUIL_BACKEND=cython`` makes a missing extension a hard error (useful
in benchmarks and CI).
"""

from __future__ import annotations

import os

_choice = os.environ.get("PLANEQUIL_BACKEND", "auto").lower()
if _choice not in ("auto", "", "cython", "python"):
    raise ImportError(f"unknown PLANEQUIL_BACKEND value: {_choice!r}")

if _choice == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "cython":
            raise
        from . import _kernels_py as _impl

BACKEND_NAME: str = _impl.BACKEND_NAME
eval_series = _impl.eval_series
eval_series_trio = _impl.eval_series_trio
turn_angle_sum = _impl.turn_angle_sum
