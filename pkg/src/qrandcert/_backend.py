"""Select the eigensolver kernel backend at import time.

The compiled extension is preferred when present; the pure-Python twin is
the fallback. ``QRANDCERT_BACKEND`` overrides the choice: "compiled",
"python", or "auto" (default).
"""
from __future__ import annotations

import os

_choice = os.environ.get("QRANDCERT_BACKEND", "auto").lower()

if _choice not in ("auto", "compiled", "python"):
    raise RuntimeError(
        f"QRANDCERT_BACKEND must be 'auto', 'compiled' or 'python', got {_choice!r}"
    )

if _choice == "python":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise RuntimeError(
                "QRANDCERT_BACKEND=compiled but the extension is not built; "
                "reinstall the package or use QRANDCERT_BACKEND=python"
            ) from None
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND_NAME
jacobi_eigh = _impl.jacobi_eigh
