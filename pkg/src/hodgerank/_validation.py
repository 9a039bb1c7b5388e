"""Shared input-validation helpers."""

from __future__ import annotations

import numpy as np


def check_finite_vector(x, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a 1-D float64 array, requiring finite entries."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {length}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_edge_array(edges, n_nodes: int) -> np.ndarray:
    """Validate an (M, 2) edge array: in-range, i < j, lexicographic, unique."""
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"edge array must have shape (M, 2), got {arr.shape}")
    if arr.min() < 0 or arr.max() >= n_nodes:
        raise ValueError("edge endpoint out of range")
    if np.any(arr[:, 0] >= arr[:, 1]):
        raise ValueError("edges must satisfy i < j (no self-loops)")
    keys = arr[:, 0] * np.int64(n_nodes) + arr[:, 1]
    if np.any(np.diff(keys) <= 0):
        raise ValueError("edges must be lexicographically sorted and unique")
    return arr
