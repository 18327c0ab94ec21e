"""Per-compound trustworthiness of a projection.

For compound k, the row of high-dimensional distances (cosine, by
default) and the row of 2D map distances (Euclidean) are compared with
Pearson's r and Kendall's tau-a, diagonal excluded. Zero-variance rows
score 0 and are flagged degenerate so color encodings stay total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import pairwise_cosine_distances, pairwise_euclidean
from .types import EmbeddingMatrix, Projection2D


@dataclass
class TrustScores:
    """Per-compound projection quality for one representation."""

    tag: str
    ids: tuple[str, ...]
    pearson: np.ndarray
    kendall: np.ndarray
    degenerate: np.ndarray  # bool: at least one trust input had zero variance

    def __post_init__(self) -> None:
        for arr in (self.pearson, self.kendall):
            if arr.shape != (len(self.ids),):
                raise ValueError("one trust value required per compound")
            if np.any(arr < -1.0 - 1e-12) or np.any(arr > 1.0 + 1e-12):
                raise ValueError("trust scores must lie in [-1, 1]")

    def value_for(self, compound_id: str, kind: str = "kendall") -> float:
        idx = self.ids.index(compound_id)
        return float(self.kendall[idx] if kind == "kendall" else self.pearson[idx])


def _check_rows(high_d: np.ndarray, low_d: np.ndarray, k: int) -> None:
    if high_d.shape != low_d.shape or high_d.ndim != 2:
        raise ValueError("distance matrices must share an n×n shape")
    n = high_d.shape[0]
    if high_d.shape[1] != n:
        raise ValueError("distance matrices must be square")
    if not 0 <= k < n:
        raise ValueError(f"compound index {k} out of range")
    if n - 1 < 2:
        raise ValueError("need at least 3 compounds for trust scores")


def pearson_trust(high_d: np.ndarray, low_d: np.ndarray, k: int) -> float:
    """Pearson r between row k of both matrices, diagonal excluded.

    Implements r = [nΣxy − ΣxΣy] / sqrt([nΣx² − (Σx)²][nΣy² − (Σy)²]);
    returns 0 for zero-variance rows (degenerate)."""
    _check_rows(high_d, low_d, k)
    mask = np.arange(high_d.shape[0]) != k
    x = high_d[k][mask]
    y = low_d[k][mask]
    n = x.size
    sx, sy = float(x.sum()), float(y.sum())
    sxy = float(x @ y)
    sxx, syy = float(x @ x), float(y @ y)
    var_x = n * sxx - sx * sx
    var_y = n * syy - sy * sy
    if var_x <= 0.0 or var_y <= 0.0:
        return 0.0
    r = (n * sxy - sx * sy) / np.sqrt(var_x * var_y)
    return float(min(1.0, max(-1.0, r)))


def _merge_count(y: list[float]) -> int:
    """Count strictly decreasing pairs (i < j with y[i] > y[j]) by merge
    sort. Equal elements never count."""
    if len(y) <= 1:
        return 0
    mid = len(y) // 2
    left = y[:mid]
    right = y[mid:]
    inversions = _merge_count(left) + _merge_count(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            inversions += len(left) - i
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    y[:] = merged
    return inversions


def kendall_tau_a(x: np.ndarray, y: np.ndarray) -> float:
    """Kendall tau-a: (concordant − discordant) / (m(m−1)/2).

    Tied pairs (in either vector) contribute to neither count but stay
    in the denominator. Discordant pairs are counted as strict
    inversions of y after sorting by (x, y), which runs in O(m log m).
    """
    m = len(x)
    if m < 2:
        raise ValueError("kendall tau needs at least 2 entries")
    order = np.lexsort((y, x))
    xs = np.asarray(x)[order]
    ys = np.asarray(y)[order]

    discordant = _merge_count(list(ys))

    def tie_pairs(values: np.ndarray) -> int:
        _, counts = np.unique(values, return_counts=True)
        return int(np.sum(counts * (counts - 1) // 2))

    ties_x = tie_pairs(xs)
    ties_y = tie_pairs(ys)
    pairs_xy = {}
    for a, b in zip(xs, ys):
        pairs_xy[(a, b)] = pairs_xy.get((a, b), 0) + 1
    ties_xy = sum(c * (c - 1) // 2 for c in pairs_xy.values())

    total = m * (m - 1) // 2
    tied = ties_x + ties_y - ties_xy
    concordant = total - tied - discordant
    return (concordant - discordant) / total


def kendall_trust(high_d: np.ndarray, low_d: np.ndarray, k: int) -> float:
    """Kendall tau-a between row k of both matrices, diagonal excluded;
    0 for zero-variance (all-tied) rows."""
    _check_rows(high_d, low_d, k)
    mask = np.arange(high_d.shape[0]) != k
    x = high_d[k][mask]
    y = low_d[k][mask]
    if np.all(x == x[0]) or np.all(y == y[0]):
        return 0.0
    return kendall_tau_a(x, y)


def _row_degenerate(high_d: np.ndarray, low_d: np.ndarray, k: int) -> bool:
    mask = np.arange(high_d.shape[0]) != k
    x = high_d[k][mask]
    y = low_d[k][mask]
    return bool(np.all(x == x[0]) or np.all(y == y[0]))


def compute_trust_scores(
    matrix: EmbeddingMatrix,
    projection: Projection2D,
    high_metric: str = "cosine",
) -> TrustScores:
    """Trust scores for every compound of one representation."""
    if matrix.ids != projection.ids:
        raise ValueError("matrix and projection are not row-aligned")
    if high_metric == "cosine":
        high_d = pairwise_cosine_distances(matrix)
    elif high_metric == "euclidean":
        high_d = pairwise_euclidean(matrix.X)
    else:
        raise ValueError(f"unknown metric {high_metric!r}")
    low_d = pairwise_euclidean(projection.coords)
    n = matrix.n
    pearson = np.zeros(n)
    kendall = np.zeros(n)
    degenerate = np.zeros(n, dtype=bool)
    for k in range(n):
        pearson[k] = pearson_trust(high_d, low_d, k)
        kendall[k] = kendall_trust(high_d, low_d, k)
        degenerate[k] = _row_degenerate(high_d, low_d, k)
    return TrustScores(
        tag=matrix.tag,
        ids=matrix.ids,
        pearson=pearson,
        kendall=kendall,
        degenerate=degenerate,
    )
