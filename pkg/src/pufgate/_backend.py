"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``PUFGATE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from pufgate import _fallback

if os.environ.get("PUFGATE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from pufgate import _kernels as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "python"

sha256_compress = _impl.sha256_compress
bch_locate_errors = _impl.bch_locate_errors


def compiled_available():
    try:
        from pufgate import _kernels  # noqa: F401
    except ImportError:
        return False
    return True
