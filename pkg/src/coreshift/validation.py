"""Input validation helpers for matrix-shaped inputs.

These mirror the scikit-learn ``check_array`` idiom but enforce the much
narrower contract this package works with: a square binary dependency
matrix with a zero diagonal.
"""

from __future__ import annotations

import numpy as np


def check_dependency_matrix(X) -> np.ndarray:
    """Validate and canonicalize a square binary dependency matrix.

    Accepts anything ``np.asarray`` understands. Entries must be 0 or 1;
    a nonzero diagonal is zeroed (self-dependencies carry no clustering
    information and are dropped on construction, like self-edges in a
    dependency graph). Returns a fresh ``int8`` array.
    """
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"dependency matrix must be square, got shape {A.shape}")
    if A.size and not np.isin(A, (0, 1)).all():
        bad = A[~np.isin(A, (0, 1))].ravel()[0]
        raise ValueError(f"dependency matrix entries must be 0 or 1, found {bad!r}")
    M = A.astype(np.int8, copy=True)
    np.fill_diagonal(M, 0)
    return M


def check_cluster_count(k: int, n: int) -> int:
    """Clamp the requested cluster count to the module count (k >= 1)."""
    if k < 1:
        raise ValueError(f"cluster count must be >= 1, got {k}")
    return min(k, n) if n >= 1 else k
