"""Kernel backend selection.

The compiled extension is used when it imports; set ``FUSIONKIT_PURE=1`` to
force the numpy fallback.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("FUSIONKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

closure = _impl.closure
conj_images = _impl.conj_images
rows_inside = _impl.rows_inside
commute_mask = _impl.commute_mask

__all__ = ["BACKEND", "closure", "conj_images", "rows_inside", "commute_mask"]
