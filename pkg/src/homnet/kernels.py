"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; otherwise
the NumPy fallback is used.  Set ``HOMNET_PURE_PYTHON=1`` to force the
fallback (useful for benchmarking and debugging).  Both backends expose
the same four functions with identical semantics and tie-breaking.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("HOMNET_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

pairwise_sqdist = _impl.pairwise_sqdist
ward_chain = _impl.ward_chain
group_sums = _impl.group_sums
percolation_depths = _impl.percolation_depths
