"""Sweep kernels with a compiled backend and a pure-numpy fallback.

The compiled module is used when importable; set HEXPATTERNS_KERNEL=pure to
force the fallback or HEXPATTERNS_KERNEL=native to require the compiled one.
BACKEND names the selection actually in effect.
"""
import importlib
import os

from . import pure
from .pure import ETA

_requested = os.environ.get("HEXPATTERNS_KERNEL", "auto").strip().lower()
_native = None
if _requested in ("auto", "native"):
    try:
        _native = importlib.import_module("._native", __name__)
    except ImportError:
        _native = None
if _requested == "native" and _native is None:
    raise ImportError("HEXPATTERNS_KERNEL=native but the compiled kernels "
                      "are not built; reinstall with Cython available")
if _requested not in ("auto", "native", "pure"):
    raise ValueError(f"HEXPATTERNS_KERNEL={_requested!r}; "
                     "expected auto, native, or pure")

BACKEND = "native" if _native is not None else "pure"
_impl = _native if _native is not None else pure

hexagon_mr_deviations = _impl.hexagon_mr_deviations
circularity_deviations = _impl.circularity_deviations
triangle_overlap_count = _impl.triangle_overlap_count

__all__ = ["BACKEND", "ETA", "hexagon_mr_deviations",
           "circularity_deviations", "triangle_overlap_count", "pure"]
