"""Kernel selection: the compiled extension when it was built, else pure Python.

Set ``FREECURVES_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("FREECURVES_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not compiled
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
box_filter = _impl.box_filter
graver_completion = _impl.graver_completion
multisets_by_degree = _impl.multisets_by_degree
