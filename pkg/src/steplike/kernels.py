"""Backend selection for the hot loops.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
numpy/scipy module ``_pykernels`` provides the same functions.  Setting the
environment variable ``STEPLIKE_BACKEND=python`` forces the fallback.
"""
import os

from . import _pykernels

if os.environ.get("STEPLIKE_BACKEND", "").lower() == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

TridiagonalFactor = _impl.TridiagonalFactor
decay_sweep = _impl.decay_sweep


def available_backends() -> dict:
    """Map backend name to module for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["compiled"] = _ckernels
    except ImportError:
        pass
    return out
