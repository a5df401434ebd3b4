"""Backend dispatch for the hot bit-mask kernels.

Two backends expose the same functions over sorted int64 mask arrays:

* ``numba``  - the `_impl` scans compiled with ``@njit`` (default when
  numba imports);
* ``numpy``  - vectorized pairwise scans from `_vector`; the inherently
  sequential kernels (Gray-code walk, remainder-property DFS) run the
  `_impl` source interpreted.

Set ``CUTCOVER_BACKEND=numpy`` (or ``numba``) to pick one explicitly.
"""

from __future__ import annotations

import os
import sys
from types import SimpleNamespace

from . import _impl, _vector

_KERNEL_NAMES = (
    "small_cut_masks",
    "gray_cut_values",
    "minimal_flags",
    "pliable_violation",
    "structsub_violation",
    "sparse_crossing_violation",
    "gamma_star_exhaustive",
)

NUMBA_AVAILABLE = hasattr(_impl.small_cut_masks, "py_func")


def _plain(fn):
    return getattr(fn, "py_func", fn)


def get_backend(name: str) -> SimpleNamespace:
    """Return the named backend as a namespace of kernel functions."""
    if name == "numba":
        funcs = {k: getattr(_impl, k) for k in _KERNEL_NAMES}
    elif name == "numpy":
        funcs = {}
        for k in _KERNEL_NAMES:
            if hasattr(_vector, k):
                funcs[k] = getattr(_vector, k)
            else:
                funcs[k] = _plain(getattr(_impl, k))
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    return SimpleNamespace(name=name, **funcs)


def _resolve_backend_name() -> str:
    requested = os.environ.get("CUTCOVER_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"CUTCOVER_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numba" and not NUMBA_AVAILABLE:
        print("cutcover: numba unavailable, falling back to numpy kernels", file=sys.stderr)
        return "numpy"
    if requested:
        return requested
    return "numba" if NUMBA_AVAILABLE else "numpy"


_ACTIVE = get_backend(_resolve_backend_name())

BACKEND = _ACTIVE.name
small_cut_masks = _ACTIVE.small_cut_masks
gray_cut_values = _ACTIVE.gray_cut_values
minimal_flags = _ACTIVE.minimal_flags
pliable_violation = _ACTIVE.pliable_violation
structsub_violation = _ACTIVE.structsub_violation
sparse_crossing_violation = _ACTIVE.sparse_crossing_violation
gamma_star_exhaustive = _ACTIVE.gamma_star_exhaustive
