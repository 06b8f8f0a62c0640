"""Backend selection for the hot statevector kernels.

The inner loops in :mod:`qdarwin.kernels` exist twice: a numba-compiled
bit-arithmetic version and a pure-numpy tensor version.  Both produce the
same results; the numba path is the default whenever numba imports cleanly.

Set ``QDARWIN_DISABLE_NUMBA=1`` (or ``true``/``yes``) before import to force
the numpy fallback, e.g. for debugging or on platforms without a working
LLVM toolchain.  ``benchmarks/bench_kernels.py`` times both paths.
"""

import os

try:
    import numba  # noqa: F401

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    _HAVE_NUMBA = False

_DISABLED = os.environ.get("QDARWIN_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

#: True when the jitted kernels are in use for this process.
NUMBA_ENABLED = _HAVE_NUMBA and not _DISABLED


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return "numba" if NUMBA_ENABLED else "numpy"
