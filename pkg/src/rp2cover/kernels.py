"""Kernel backend selection.

Imports the compiled kernels when available, otherwise the pure-Python
twin.  Set RP2COVER_PURE=1 in the environment to force the Python backend
(useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

if os.environ.get("RP2COVER_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

identity = _impl.identity
compose = _impl.compose
inverse = _impl.inverse
conjugate = _impl.conjugate
product_of = _impl.product_of
cycles_of = _impl.cycles_of
cycle_lengths = _impl.cycle_lengths
is_square_type = _impl.is_square_type
component_labels = _impl.component_labels
orbit_count = _impl.orbit_count
is_transitive = _impl.is_transitive
orbits = _impl.orbits
alpha_extension = _impl.alpha_extension
orientation_consistent = _impl.orientation_consistent
minimal_block = _impl.minimal_block
