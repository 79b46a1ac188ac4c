"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``BRUNNIAN_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
bracket_histogram = _kernels_py.bracket_histogram
fourier_clausen = _kernels_py.fourier_clausen

if os.environ.get("BRUNNIAN_PURE_PYTHON") != "1":
    try:
        from . import _kernels_c
    except ImportError:  # extension not built
        _kernels_c = None
    if _kernels_c is not None:
        BACKEND = "cython"
        bracket_histogram = _kernels_c.bracket_histogram
        fourier_clausen = _kernels_c.fourier_clausen

__all__ = ["BACKEND", "bracket_histogram", "fourier_clausen"]
