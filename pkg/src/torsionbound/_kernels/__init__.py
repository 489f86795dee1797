"""Hot loops, compiled when available.

The Cython module ``_ckernels`` is preferred; ``_pykernels`` is the numpy
fallback with identical signatures. Set ``TORSIONBOUND_PURE_PYTHON=1`` to force
the fallback.
"""

import os

from . import _pykernels

if os.environ.get("TORSIONBOUND_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

closure = _impl.closure
components = _impl.components
prime_pi = _impl.prime_pi
totients = _impl.totients


def available_backends():
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
