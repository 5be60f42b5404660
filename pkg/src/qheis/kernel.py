"""Selects the compiled product kernel when built, else the pure-Python one.

Set ``QHEIS_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("QHEIS_PURE_PYTHON", "") not in ("", "0"):
    from ._kernel_py import mul_terms
else:
    try:
        from ._kernel import mul_terms
        BACKEND = "compiled"
    except ImportError:
        from ._kernel_py import mul_terms

__all__ = ["mul_terms", "BACKEND"]
