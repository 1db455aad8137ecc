"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``GENCONN_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("GENCONN_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

pack_search = _impl.pack_search
partition_search = _impl.partition_search


def compiled():
    """The compiled module, or None when it is not built."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels
