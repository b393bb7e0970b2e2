"""Hot loops with an optional numba backend.

The coset-enumeration kernel lives in _coset_core.py and is loaded twice:
compiled with numba.njit (cached on disk), and as plain Python over numpy
arrays. GEO4_NUMBA=0 selects the pure path; by default numba is used when it
imports.
"""
from __future__ import annotations

import importlib.util
import os
import sys
from pathlib import Path
from types import ModuleType

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_SRC = Path(__file__).with_name("_coset_core.py")
_loaded: dict[bool, ModuleType] = {}


def _load(jit: bool) -> ModuleType:
    if jit not in _loaded:
        name = "geo4._coset_core_" + ("nb" if jit else "py")
        spec = importlib.util.spec_from_file_location(name, _SRC)
        mod = importlib.util.module_from_spec(spec)
        mod._USE_JIT = jit
        sys.modules[name] = mod  # numba's disk cache resolves globals by module name
        spec.loader.exec_module(mod)
        _loaded[jit] = mod
    return _loaded[jit]


_core = _load(False)
UNDEF = _core.UNDEF
CLOSED = _core.CLOSED
EXCEEDED = _core.EXCEEDED


def use_numba() -> bool:
    flag = os.environ.get("GEO4_NUMBA", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")


def kernel(jit: bool | None = None):
    """The enumerate_cosets entry point for the requested backend."""
    if jit is None:
        jit = use_numba()
    return _load(bool(jit and HAVE_NUMBA)).enumerate_cosets


def enumerate_cosets(ncols, rel, roff, sub, soff, maxc, jit: bool | None = None):
    fn = kernel(jit)
    return fn(ncols, np.asarray(rel, np.int64), np.asarray(roff, np.int64),
              np.asarray(sub, np.int64), np.asarray(soff, np.int64), int(maxc))
