"""Backend selection for the arithmetic kernels.

The compiled extension ``heckesharp._kernels`` is used when it imports;
otherwise, or when ``HECKESHARP_PURE_PYTHON=1`` is set, the pure-Python
twin ``heckesharp._kernels_py`` is used. Callers go through this module's
attributes so that :func:`set_backend` takes effect everywhere.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_NAMES = ("add_exponents", "mul_terms", "add_terms", "bernstein_chain", "green_scan")

BACKEND = None


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


def set_backend(name):
    """Switch every kernel to ``"compiled"`` or ``"python"``."""
    global BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        mod = _compiled
    elif name == "python":
        mod = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for n in _NAMES:
        g[n] = getattr(mod, n)
    BACKEND = name


if _compiled is not None and os.environ.get("HECKESHARP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    set_backend("compiled")
else:
    set_backend("python")
