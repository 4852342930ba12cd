"""Backend selection for the modular elimination kernel.

The compiled extension is preferred; the numpy implementation is used when
the extension is missing or when ``KILLINGTYPE_KERNEL=python`` is set.
"""

from __future__ import annotations

import os

from . import _modkernel_py

python_rref_mod = _modkernel_py.rref_mod

try:
    from ._modkernel import rref_mod as compiled_rref_mod
except ImportError:  # extension not built
    compiled_rref_mod = None

if compiled_rref_mod is not None and os.environ.get("KILLINGTYPE_KERNEL", "") != "python":
    rref_mod = compiled_rref_mod
    BACKEND = "cython"
else:
    rref_mod = python_rref_mod
    BACKEND = "python"

__all__ = ["rref_mod", "BACKEND", "python_rref_mod", "compiled_rref_mod"]
