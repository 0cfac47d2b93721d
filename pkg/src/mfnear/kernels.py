"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

MFNEAR_FORCE_PURE=1 forces the fallback (used by the benchmark and tests).
"""

from __future__ import annotations

import os

if os.environ.get("MFNEAR_FORCE_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

coset_affine_bits = _impl.coset_affine_bits
coset_affine_all = _impl.coset_affine_all
