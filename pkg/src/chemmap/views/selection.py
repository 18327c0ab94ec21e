"""Compound selections and lasso geometry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..dr.types import Projection2D
from .hexgrid import ViewError

PROVENANCES = ("hexes", "lasso", "table", "new-compound")


@dataclass(frozen=True)
class Selection:
    """A deduplicated set of compound ids plus where it came from."""

    ids: frozenset[str]
    provenance: str
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", frozenset(self.ids))
        if self.provenance not in PROVENANCES:
            raise ViewError(f"unknown selection provenance {self.provenance!r}")

    def __len__(self) -> int:
        return len(self.ids)

    def validate_against(self, dataset_ids: Iterable[str]) -> None:
        unknown = sorted(self.ids - set(dataset_ids))
        if unknown:
            raise ViewError(
                f"selection references unknown compounds: {', '.join(unknown)}"
            )

    # composites keep the left operand's provenance
    def union(self, other: "Selection") -> "Selection":
        return Selection(self.ids | other.ids, self.provenance)

    def intersection(self, other: "Selection") -> "Selection":
        return Selection(self.ids & other.ids, self.provenance)


def _on_segment(px: float, py: float,
                ax: float, ay: float, bx: float, by: float) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0.0:
        return False
    return (min(ax, bx) <= px <= max(ax, bx)
            and min(ay, by) <= py <= max(ay, by))


def point_in_polygon(px: float, py: float,
                     polygon: Sequence[tuple[float, float]]) -> bool:
    """Even-odd membership with boundary points counting as inside.

    Casts a horizontal ray toward +x and counts edge crossings, so
    self-intersecting polygons get the standard even-odd fill.
    """
    n = len(polygon)
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        if _on_segment(px, py, ax, ay, bx, by):
            return True
    inside = False
    j = n - 1
    for i in range(n):
        xi, yi = polygon[i]
        xj, yj = polygon[j]
        if (yi > py) != (yj > py):
            x_cross = xi + (py - yi) * (xj - xi) / (yj - yi)
            if px < x_cross:
                inside = not inside
        j = i
    return inside


def lasso_select(
    projection: Projection2D,
    polygon: Sequence[tuple[float, float]],
    name: str | None = None,
) -> Selection:
    """Compounds whose projected points fall inside the lasso polygon."""
    if len(polygon) < 3:
        raise ViewError("lasso polygon needs at least 3 vertices")
    ids = frozenset(
        cid
        for cid, (x, y) in zip(projection.ids, projection.coords)
        if point_in_polygon(float(x), float(y), polygon)
    )
    return Selection(ids, provenance="lasso", name=name)
