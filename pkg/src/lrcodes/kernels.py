"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module stands in. ``use("python")`` / ``use("compiled")`` switch explicitly
(tests and the benchmark run both).
"""

from __future__ import annotations

from types import ModuleType

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

active: ModuleType = _compiled if _compiled is not None else _kernels_py


def available() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get(name: str) -> ModuleType:
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `python setup.py build_ext --inplace`")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def use(name: str) -> ModuleType:
    """Select the process-wide backend and return it."""
    global active
    active = get(name)
    return active
