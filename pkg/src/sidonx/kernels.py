"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting ``SIDONX_PURE=1``
forces the pure-Python twin. Both expose ``TrialKernel`` and ``singer_scan``
with identical results.
"""
import os

from . import _pykernels

try:
    if os.environ.get("SIDONX_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as _active
except ImportError:
    _active = _pykernels

BACKEND = _active.BACKEND
TrialKernel = _active.TrialKernel
singer_scan = _active.singer_scan


def available_backends():
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["compiled"] = _ckernels
    return out


def get_backend(name):
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available") from None
