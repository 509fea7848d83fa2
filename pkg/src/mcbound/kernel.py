"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``MCBOUND_PURE_PYTHON=1`` to force the fallback even when the extension
is importable.
"""

import os

from . import _gen_py

try:
    from . import _gen_c
except ImportError:
    _gen_c = None

if os.environ.get("MCBOUND_PURE_PYTHON") or _gen_c is None:
    _active = _gen_py
else:
    _active = _gen_c

BACKEND = _active.BACKEND
canonical_keys = _active.canonical_keys
extend = _active.extend


def available_backends():
    names = []
    if _gen_c is not None:
        names.append("c")
    names.append("python")
    return names


def get_backend(name=None):
    """Resolve a kernel module by name ("c", "python", or None for default)."""
    if name is None:
        return _active
    if name in ("python", "py"):
        return _gen_py
    if name == "c":
        if _gen_c is None:
            raise ValueError("compiled kernel is not available")
        return _gen_c
    raise ValueError(f"unknown kernel backend: {name!r}")
