"""Row-reduction backend selection.

Two interchangeable kernels implement the reduced row echelon form:
``_echelon_c`` (compiled) and ``_echelon_py`` (pure Python). The compiled one
is preferred when importable; ``ARRANGEATLAS_BACKEND=python`` or
``ARRANGEATLAS_BACKEND=c`` forces a choice. Both produce bit-identical
results, so the selection never affects any computed value, only speed.
"""

from __future__ import annotations

import os

from . import _echelon_py

_BACKENDS = {"python": _echelon_py}

try:
    from . import _echelon_c

    _BACKENDS["c"] = _echelon_c
except ImportError:
    _echelon_c = None


def _initial_backend() -> str:
    requested = os.environ.get("ARRANGEATLAS_BACKEND")
    if requested is None:
        return "c" if "c" in _BACKENDS else "python"
    if requested not in ("python", "c"):
        raise RuntimeError(
            f"ARRANGEATLAS_BACKEND must be 'python' or 'c', got {requested!r}"
        )
    if requested not in _BACKENDS:
        raise RuntimeError(
            "ARRANGEATLAS_BACKEND=c requested but the compiled kernel is not "
            "installed; build it with 'pip install -e . --no-build-isolation'"
        )
    return requested


_active_name = _initial_backend()
_active = _BACKENDS[_active_name]


def backend_name() -> str:
    """Name of the kernel in use: 'c' or 'python'."""
    return _active_name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    """Switch kernels at runtime (used by tests and the benchmark)."""
    global _active, _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}")
    _active_name = name
    _active = _BACKENDS[name]


def rref(rows, ncols):
    """Reduced row echelon form; dispatches to the active kernel."""
    return _active.rref(rows, ncols)
