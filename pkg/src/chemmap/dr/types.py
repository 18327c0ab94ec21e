"""Shared dimensionality-reduction data types."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

REPRESENTATION_TAGS = ("ecfp", "path", "descriptors", "embeddings")


@dataclass
class EmbeddingMatrix:
    """n compounds × d features under one representation tag."""

    tag: str
    ids: tuple[str, ...]
    X: np.ndarray

    def __post_init__(self) -> None:
        self.X = np.asarray(self.X, dtype=np.float64)
        if self.X.ndim != 2:
            raise ValueError("embedding matrix must be two-dimensional")
        n, d = self.X.shape
        if n != len(self.ids):
            raise ValueError(f"{len(self.ids)} ids for {n} rows")
        if n < 3:
            raise ValueError("embedding matrix needs at least 3 rows")
        if d < 2:
            raise ValueError("embedding matrix needs at least 2 features")
        if not np.isfinite(self.X).all():
            raise ValueError("embedding matrix contains NaN or infinite entries")

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def d(self) -> int:
        return int(self.X.shape[1])

    def row_for(self, compound_id: str) -> np.ndarray:
        try:
            return self.X[self.ids.index(compound_id)]
        except ValueError:
            raise KeyError(f"unknown compound id {compound_id!r}") from None


@dataclass
class Projection2D:
    """Planar coordinates for every compound of a representation."""

    tag: str
    ids: tuple[str, ...]
    coords: np.ndarray
    source: str = "tsne"  # tsne|parametric
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.coords = np.asarray(self.coords, dtype=np.float64)
        if self.coords.ndim != 2 or self.coords.shape[1] != 2:
            raise ValueError("projection coordinates must be n×2")
        if self.coords.shape[0] != len(self.ids):
            raise ValueError("one coordinate row required per compound id")
        if not np.isfinite(self.coords).all():
            raise ValueError("projection contains non-finite coordinates")
        if self.source not in ("tsne", "parametric"):
            raise ValueError(f"unknown projection source {self.source!r}")

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    def point_for(self, compound_id: str) -> np.ndarray:
        try:
            return self.coords[self.ids.index(compound_id)]
        except ValueError:
            raise KeyError(f"unknown compound id {compound_id!r}") from None
