"""Pick the Smith reduction kernel at import time.

The compiled kernel is used when it imports and ``AUTZ_PURE_PYTHON`` is not
set to ``1``. Callers go through :func:`snf_reduce`, which falls back to the
pure-Python kernel when int64 storage overflows.
"""

import os

from . import _snf_py

try:
    if os.environ.get("AUTZ_PURE_PYTHON") == "1":
        raise ImportError("pure-Python kernel forced by AUTZ_PURE_PYTHON")
    from . import _snf as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def snf_reduce(A, track_u=False, track_v=True):
    """Smith-reduce a list-of-rows integer matrix; returns ``(D, U, V)``.

    The input is never modified.
    """
    if _compiled is not None:
        try:
            return _compiled.snf_reduce(A, track_u, track_v)
        except OverflowError:
            pass
    return _snf_py.snf_reduce([list(r) for r in A], track_u, track_v)


def snf_reduce_python(A, track_u=False, track_v=True):
    return _snf_py.snf_reduce([list(r) for r in A], track_u, track_v)


def snf_reduce_compiled(A, track_u=False, track_v=True):
    if _compiled is None:
        raise RuntimeError("compiled kernel not available")
    return _compiled.snf_reduce(A, track_u, track_v)
