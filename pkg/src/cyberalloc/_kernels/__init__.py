"""Backend selection for the hot objective kernels.

The compiled Cython extension is used when it importable; otherwise the
NumPy fallback takes over. ``CYBERALLOC_BACKEND=python|compiled`` forces the
choice (``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _reference

try:
    from . import _compiled
except ImportError:  # extension not built on this install
    _compiled = None

_FORCED = os.environ.get("CYBERALLOC_BACKEND", "").strip().lower()
if _FORCED == "python":
    _active = _reference
elif _FORCED == "compiled":
    if _compiled is None:
        raise ImportError(
            "CYBERALLOC_BACKEND=compiled but the compiled kernels are not built; "
            "reinstall the package with Cython available"
        )
    _active = _compiled
elif _FORCED:
    raise ImportError(f"unknown CYBERALLOC_BACKEND value {_FORCED!r}; use 'python' or 'compiled'")
else:
    _active = _compiled if _compiled is not None else _reference

pt_objective = _active.pt_objective
eut_objective = _active.eut_objective


def backend_name() -> str:
    """Name of the kernel implementation in use: 'compiled' or 'python'."""
    return _active.NAME


def available_backends() -> tuple:
    """Importable kernel modules, preferred one first."""
    mods = [m for m in (_compiled, _reference) if m is not None]
    return tuple(mods)
