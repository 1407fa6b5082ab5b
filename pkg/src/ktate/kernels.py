"""Kernel backend selection.

The compiled module is used when it imports; set ``KTATE_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("KTATE_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
poly_mul = _impl.poly_mul
series_div = _impl.series_div
poly_gcd = _impl.poly_gcd
poly_divexact = _impl.poly_divexact
snf_diagonal = _impl.snf_diagonal

__all__ = ["BACKEND", "poly_mul", "series_div", "poly_gcd", "poly_divexact", "snf_diagonal"]
