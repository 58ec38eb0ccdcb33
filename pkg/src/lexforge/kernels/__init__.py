"""Numeric inner loops for graph construction and PageRank.

Two interchangeable backends implement the same functions:

* ``_numba``  -- ``@njit`` loops over CSR arrays (default when numba imports)
* ``_numpy``  -- vectorised numpy/scipy.sparse versions

Set ``LEXFORGE_DISABLE_NUMBA=1`` to force the numpy path. Both backends are
importable directly for equivalence tests and benchmarks.
"""

import os

from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if os.environ.get("LEXFORGE_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes", "on"):
    try:
        from . import _numba
    except ImportError:  # numba missing or broken
        pass
    else:
        _impl = _numba
        BACKEND = "numba"

closed_overlap = _impl.closed_overlap
power_step = _impl.power_step
power_iterate = _impl.power_iterate


def get_backend(name: str):
    """Return the kernel module for ``"numba"`` or ``"numpy"``."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(f"unknown backend {name!r}")
