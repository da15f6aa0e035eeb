"""Backend selection for the hot kernels.

The compiled extension ``distver._ckernels`` is used when it imports; the
numpy implementation in ``distver._pykernels`` is the fallback.  Setting the
environment variable ``DISTVER_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("DISTVER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

rref_inplace = _impl.rref_inplace
span_scan = _impl.span_scan
cluster_dfs = _impl.cluster_dfs

__all__ = ["BACKEND", "cluster_dfs", "rref_inplace", "span_scan"]
