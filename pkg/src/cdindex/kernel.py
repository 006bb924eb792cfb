"""Selects the exact-rank kernel at import: compiled extension if present,
pure Python otherwise.

Set CDINDEX_PURE_KERNEL=1 to force the pure fallback.  The compiled kernel
works in 64-bit integers and bails out to the pure implementation on the
rare matrices whose elimination overflows its guard bounds, so results are
identical either way.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("CDINDEX_PURE_KERNEL"):
    _fast = None
else:
    try:
        from . import _kernel as _fast
    except ImportError:
        _fast = None

IMPL = "compiled" if _fast is not None else _kernel_py.IMPL


def sparse_rank(entries):
    """Exact rank over the rationals of integer (row, col, val) triples."""
    if _fast is not None:
        entries = list(entries)
        try:
            return _fast.sparse_rank(entries)
        except OverflowError:
            return _kernel_py.sparse_rank(entries)
    return _kernel_py.sparse_rank(entries)
