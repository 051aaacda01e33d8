"""Backend selection for the hot kernels.

The compiled module ``_ckernels`` is used when it imported cleanly; otherwise,
or when ``YBFORGE_PURE_PYTHON=1`` is set, the numpy/Python versions in
``_pykernels`` are used.  Both expose the same functions.
"""
from __future__ import annotations

import os

from . import _pykernels

_backend = _pykernels
BACKEND = "python"

if os.environ.get("YBFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        _backend = _ckernels
        BACKEND = "cython"

iyb_violation = _backend.iyb_violation
associativity_violation = _backend.associativity_violation
enumerate_iyb = _backend.enumerate_iyb
extend_hom = _backend.extend_hom
lift_search = _backend.lift_search


def backends() -> dict:
    """Every importable backend by name, for parity tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
