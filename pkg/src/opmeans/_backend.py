"""Kernel selection.

Set ``OPMEANS_NO_JIT=1`` to force the pure-numpy kernels; they are also used
automatically when numba cannot be imported.
"""

import os

_FALSY = ("", "0", "false", "no", "off")

JIT_REQUESTED = os.environ.get("OPMEANS_NO_JIT", "").strip().lower() in _FALSY

if JIT_REQUESTED:
    try:
        from . import _kernels_numba as kernels
    except ImportError:  # numba missing
        from . import _kernels_numpy as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND = "numba" if kernels.__name__.endswith("_numba") else "numpy"


def thread_count():
    """Parallelism cap from ``OPMEANS_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("OPMEANS_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n
