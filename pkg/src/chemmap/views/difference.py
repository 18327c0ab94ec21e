"""Difference view: contrast two projections of the same compounds.

The outer layer shows representation A's hexagons with opacity encoding
per-bin Kendall trust. The selected compounds are then re-binned under
representation B's coordinates on the same grid; each occupied cell
gets an inner hexagon sized by member count, showing where A's
selection lands in B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ..dr.trust import TrustScores
from ..dr.types import Projection2D
from .hexgrid import OPACITY_FLOOR, HexBin, HexGrid, ViewError, bin_points
from .selection import Selection

# inner circumradius at the maximum count; scaling (not capping) keeps
# size strictly increasing with count while staying inside the cell
INNER_SCALE = 0.9


@dataclass(frozen=True)
class InnerHex:
    """Where part of the selection lands under the compared projection."""

    parent: tuple[int, int]  # axial cell in the shared grid layout
    center: tuple[float, float]
    size: float  # circumradius of the inner hexagon
    member_ids: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.member_ids)


@dataclass(frozen=True)
class DifferenceViewModel:
    reference_tag: str
    compared_tag: str
    grid: HexGrid
    outer_bins: tuple[HexBin, ...]
    inner_hexes: tuple[InnerHex, ...]


def difference_view(
    selection: Selection,
    proj_a: Projection2D,
    proj_b: Projection2D,
    grid: HexGrid,
    trust_a: TrustScores,
    outer_statistic: str = "mean",
) -> DifferenceViewModel:
    """Build the two-layer model contrasting projections A and B."""
    if not selection.ids:
        raise ViewError("difference view requires a non-empty selection")
    missing = sorted(set(selection.ids) - set(proj_b.ids))
    if missing:
        raise ViewError(
            f"compounds missing from projection {proj_b.tag!r}: "
            f"{', '.join(missing)}"
        )
    selection.validate_against(proj_a.ids)
    if trust_a.ids != proj_a.ids:
        raise ViewError("trust scores are not aligned with the reference projection")
    if outer_statistic == "mean":
        stat = np.mean
    elif outer_statistic == "min":
        stat = np.min
    else:
        raise ViewError(f"unknown outer statistic {outer_statistic!r}")

    trust_index = {cid: i for i, cid in enumerate(trust_a.ids)}
    outer = []
    for hexbin in bin_points(proj_a, grid.circumradius, origin=grid.origin):
        value = float(stat([trust_a.kendall[trust_index[cid]]
                            for cid in hexbin.member_ids]))
        opacity = min(1.0, max(OPACITY_FLOOR, value))
        outer.append(replace(hexbin, mean_trust=value, opacity=opacity))

    groups: dict[tuple[int, int], list[str]] = {}
    for cid in sorted(selection.ids):
        x, y = proj_b.point_for(cid)
        groups.setdefault(grid.axial_for(float(x), float(y)), []).append(cid)
    max_count = max(len(ids) for ids in groups.values())

    inner = tuple(
        InnerHex(
            parent=axial,
            center=grid.center_of(*axial),
            size=INNER_SCALE * grid.circumradius
            * math.sqrt(len(groups[axial]) / max_count),
            member_ids=tuple(groups[axial]),
        )
        for axial in sorted(groups)
    )
    return DifferenceViewModel(
        reference_tag=proj_a.tag,
        compared_tag=proj_b.tag,
        grid=grid,
        outer_bins=tuple(outer),
        inner_hexes=inner,
    )
