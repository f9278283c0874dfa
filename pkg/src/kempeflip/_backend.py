"""Select the compiled kernels when available, else the pure-Python ones.

Set ``KEMPEFLIP_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("KEMPEFLIP_PURE_PYTHON", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _ext as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"
