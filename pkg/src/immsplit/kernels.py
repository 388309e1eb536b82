"""Kernel selection: compiled extension when importable, else pure Python.

Set ``IMMSPLIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("IMMSPLIT_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
max_flow = _impl.max_flow
source_side = _impl.source_side
cut_profile = _impl.cut_profile
min_nontrivial_cut = _impl.min_nontrivial_cut
route = _impl.route

INF = 1 << 30
