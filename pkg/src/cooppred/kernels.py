"""Backend selection for the hot numerical kernels.

The compiled Cython extension is preferred; the pure-Python twin is used
when the extension is unavailable or when COOPPRED_PURE_PYTHON=1 is set.
Both expose the same functions and status/event constants.
"""
from __future__ import annotations

import os

from . import _pykernels as _py

if os.environ.get("COOPPRED_PURE_PYTHON", "") not in ("", "0"):
    _impl = _py
else:
    try:
        from . import _ext as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _py

OK = _py.OK
EVENT = _py.EVENT
BOX = _py.BOX
UNDERFLOW = _py.UNDERFLOW
MAXSTEPS = _py.MAXSTEPS
NONFINITE = _py.NONFINITE
EV_NONE = _py.EV_NONE
EV_VNULL = _py.EV_VNULL
EV_SECTION_UP = _py.EV_SECTION_UP

ode_integrate = _impl.ode_integrate
rd_rk4 = _impl.rd_rk4
rd_imex = _impl.rd_imex
rdd_imex = _impl.rdd_imex


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return "compiled" if getattr(_impl, "COMPILED", False) else "python"


def backends():
    """All importable backends as (name, module) pairs, compiled first."""
    out = []
    if _impl is not _py:
        out.append(("compiled", _impl))
    out.append(("python", _py))
    return out
