"""Backend selection for the augmenting-path kernel.

The compiled ``_flowcore`` extension is used when it imports; otherwise the
pure-Python twin in ``_flowpy`` runs. Both produce identical results.
"""

from __future__ import annotations

import numpy as np

from lcreduce import _flowpy

try:
    from lcreduce import _flowcore
except ImportError:  # extension not built
    _flowcore = None

_backend = "cython" if _flowcore is not None else "python"


def available_backends():
    return ("cython", "python") if _flowcore is not None else ("python",)


def get_backend():
    return _backend


def set_backend(name):
    """Switch kernels process-wide; returns the previous backend name."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available")
    previous, _backend = _backend, name
    return previous


def augment(n, start, adj, head, cap, s, t, limit=-1):
    """Run augmentation on int64 arrays; ``cap`` is modified in place."""
    if _backend == "cython":
        return _flowcore.augment(n, start, adj, head, cap, s, t, limit)
    caps = cap.tolist()
    value = _flowpy.augment(n, start.tolist(), adj.tolist(), head.tolist(), caps, s, t, limit)
    cap[:] = np.asarray(caps, dtype=np.int64)
    return value
