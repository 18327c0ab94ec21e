"""Pairwise distance computations used across the projection pipeline."""

from __future__ import annotations

import numpy as np

from .types import EmbeddingMatrix


def pairwise_cosine_distances(matrix: EmbeddingMatrix) -> np.ndarray:
    """Symmetric n×n cosine distance matrix, 1 − cos(xᵢ, xⱼ).

    Raises ValueError naming the compound if any row is all zeros
    (cosine similarity is undefined there).
    """
    X = matrix.X
    norms = np.linalg.norm(X, axis=1)
    zero_rows = np.flatnonzero(norms == 0.0)
    if zero_rows.size:
        raise ValueError(
            f"cosine distance undefined for all-zero row of compound "
            f"{matrix.ids[int(zero_rows[0])]!r}"
        )
    unit = X / norms[:, None]
    sim = unit @ unit.T
    np.clip(sim, -1.0, 1.0, out=sim)
    dist = 1.0 - sim
    np.fill_diagonal(dist, 0.0)
    # enforce exact symmetry against accumulated float error
    return (dist + dist.T) / 2.0


def pairwise_squared_euclidean(X: np.ndarray) -> np.ndarray:
    """Symmetric matrix of squared Euclidean distances between rows."""
    X = np.asarray(X, dtype=np.float64)
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return (d2 + d2.T) / 2.0


def pairwise_euclidean(X: np.ndarray) -> np.ndarray:
    """Symmetric matrix of Euclidean distances between rows."""
    return np.sqrt(pairwise_squared_euclidean(X))
