"""Kernel selection: compiled extension when available, pure Python otherwise.

Set QTHETA_KERNEL=pure (or =fast) to force a backend; the default prefers
the compiled kernel and silently falls back.
"""

import os

_choice = os.environ.get("QTHETA_KERNEL", "").strip().lower()

impl = None
if _choice in ("", "fast", "compiled"):
    try:
        from . import _fast as impl  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        impl = None
if impl is None:
    if _choice in ("fast", "compiled"):
        raise ImportError("QTHETA_KERNEL=%s requested but the compiled kernel "
                          "is not built" % _choice)
    from . import pure as impl  # type: ignore[no-redef]
    BACKEND = "pure"

convolve = impl.convolve
convolve_trunc = impl.convolve_trunc
convolve_square = impl.convolve_square
cyclo_rem = impl.cyclo_rem
dot = impl.dot
scaled_add = impl.scaled_add
