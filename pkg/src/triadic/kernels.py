"""Kernel backend selection.

The compiled extension is used when importable; set ``TRIADIC_PURE_PYTHON=1``
to force the pure-Python implementation.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _compiled is not None:
    _BACKENDS["cython"] = _compiled

if os.environ.get("TRIADIC_PURE_PYTHON") or _compiled is None:
    active: ModuleType = _pykernels
else:
    active = _compiled


def available() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return active.NAME


def use(name: str) -> ModuleType:
    """Switch the process-wide backend; returns the previous one."""
    global active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available()})")
    previous = active
    active = _BACKENDS[name]
    return previous


def get(name: str) -> ModuleType:
    return _BACKENDS[name]


def pair_index(arrays, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted author-pair keys with the number of papers in ``[lo, hi)`` holding each pair."""
    ptr = arrays.paper_ptr
    flat = arrays.paper_authors
    n = np.int64(arrays.n_authors)
    sizes = np.diff(ptr[lo : hi + 1])
    chunks = []
    for k in np.unique(sizes):
        if k < 2:
            continue
        rows = np.nonzero(sizes == k)[0] + lo
        starts = ptr[rows]
        block = flat[starts[:, None] + np.arange(k)[None, :]].astype(np.int64)
        i, j = np.triu_indices(int(k), 1)
        chunks.append((block[:, i] * n + block[:, j]).ravel())
    if not chunks:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int32)
    keys, counts = np.unique(np.concatenate(chunks), return_counts=True)
    return keys, counts.astype(np.int32)
