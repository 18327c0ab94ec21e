"""Hexagonal aggregation of 2D projections.

Pointy-top hexagons addressed by axial coordinates. A point is binned
by converting to fractional axial coordinates and cube-rounding, which
assigns it to the hexagon with the nearest center. Bin opacity encodes
the member count and saturates at a per-area density, so re-binning at
a different radius keeps the visual density comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from ..dr.trust import TrustScores
from ..dr.types import Projection2D

OPACITY_FLOOR = 0.08

_SQRT3 = math.sqrt(3.0)

# modal tie-break: more potent class wins; labels outside the activity
# vocabulary rank after it, alphabetically
_CLASS_PRIORITY = {"active": 0, "moderately active": 1, "inactive": 2,
                   "unlabeled": 3}


class ViewError(ValueError):
    pass


def _cube_round(qf: float, rf: float) -> tuple[int, int]:
    # round all three cube coordinates, then repair the one that moved
    # farthest so q + r + s = 0 still holds
    sf = -qf - rf
    q, r, s = round(qf), round(rf), round(sf)
    dq, dr, ds = abs(q - qf), abs(r - rf), abs(s - sf)
    if dq > dr and dq > ds:
        q = -r - s
    elif dr > ds:
        r = -q - s
    return int(q), int(r)


@dataclass(frozen=True)
class HexGrid:
    """Pointy-top hexagon tiling of the projection plane."""

    circumradius: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.circumradius) and self.circumradius > 0):
            raise ViewError("circumradius must be positive and finite")

    @property
    def cell_area(self) -> float:
        return 1.5 * _SQRT3 * self.circumradius * self.circumradius

    def axial_for(self, x: float, y: float) -> tuple[int, int]:
        """Axial index of the hexagon containing (x, y)."""
        px = (x - self.origin[0]) / self.circumradius
        py = (y - self.origin[1]) / self.circumradius
        qf = (_SQRT3 / 3.0) * px - py / 3.0
        rf = (2.0 / 3.0) * py
        return _cube_round(qf, rf)

    def center_of(self, q: int, r: int) -> tuple[float, float]:
        x = self.origin[0] + self.circumradius * _SQRT3 * (q + r / 2.0)
        y = self.origin[1] + self.circumradius * 1.5 * r
        return (x, y)

    def neighbors(self, q: int, r: int) -> tuple[tuple[int, int], ...]:
        return tuple(
            (q + dq, r + dr)
            for dq, dr in ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))
        )


def hex_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Grid distance between two axial cells (number of hexagon steps)."""
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def nearest_hexes(grid: HexGrid, x: float, y: float, k: int = 3) -> tuple[tuple[int, int], ...]:
    """The k cells whose centers are nearest to (x, y).

    Candidates are the containing cell and its six neighbors, which is
    sufficient for k ≤ 7 because every other center is farther away.
    """
    if not 1 <= k <= 7:
        raise ViewError("k must be between 1 and 7")
    home = grid.axial_for(x, y)
    candidates = (home,) + grid.neighbors(*home)

    def sq_dist(cell: tuple[int, int]) -> float:
        cx, cy = grid.center_of(*cell)
        return (cx - x) ** 2 + (cy - y) ** 2

    ranked = sorted(candidates, key=lambda cell: (sq_dist(cell), cell))
    return tuple(ranked[:k])


@dataclass(frozen=True)
class HexBin:
    """One occupied hexagon: members plus display aggregates."""

    q: int
    r: int
    center: tuple[float, float]
    member_ids: tuple[str, ...]
    aggregate: object | None = None
    mean_trust: float | None = None
    opacity: float = 1.0

    def __post_init__(self) -> None:
        if not self.member_ids:
            raise ViewError("empty bins are not materialized")
        if not 0.0 < self.opacity <= 1.0:
            raise ViewError("opacity must lie in (0, 1]")

    @property
    def count(self) -> int:
        return len(self.member_ids)

    @property
    def axial(self) -> tuple[int, int]:
        return (self.q, self.r)


def _assign(projection: Projection2D, grid: HexGrid) -> dict[tuple[int, int], list[str]]:
    groups: dict[tuple[int, int], list[str]] = {}
    for cid, (x, y) in zip(projection.ids, projection.coords):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ViewError(f"non-finite coordinate for compound {cid!r}")
        groups.setdefault(grid.axial_for(float(x), float(y)), []).append(cid)
    return groups


def saturation_count(kappa: float, grid: HexGrid) -> int:
    """Member count at which a bin reaches full opacity; scales with
    cell area so granularity changes keep densities comparable."""
    if kappa <= 0:
        raise ViewError("kappa must be positive")
    return max(1, round(kappa * grid.cell_area))


def opacity_for_count(count: int, saturation: int) -> float:
    return min(1.0, max(OPACITY_FLOOR, count / saturation))


def calibrate_kappa(
    projection: Projection2D,
    circumradius: float,
    origin: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Density (compounds per unit area) that saturates a bin, chosen so
    the densest bin at the given default radius reaches opacity 1."""
    grid = HexGrid(circumradius, origin)
    groups = _assign(projection, grid)
    densest = max(len(ids) for ids in groups.values())
    return densest / grid.cell_area


def bin_points(
    projection: Projection2D,
    circumradius: float,
    origin: tuple[float, float] = (0.0, 0.0),
    kappa: float | None = None,
    trust: TrustScores | None = None,
) -> list[HexBin]:
    """Partition a projection into occupied hexagonal bins.

    Bins come back sorted by axial index. When kappa is omitted it is
    calibrated on this projection, so the densest bin saturates; pass
    the calibrated value back in when re-binning at other radii.
    """
    grid = HexGrid(circumradius, origin)
    groups = _assign(projection, grid)
    if kappa is None:
        densest = max(len(ids) for ids in groups.values())
        kappa = densest / grid.cell_area
    c_sat = saturation_count(kappa, grid)

    trust_index: dict[str, int] | None = None
    if trust is not None:
        if trust.ids != projection.ids:
            raise ViewError("trust scores are not aligned with the projection")
        trust_index = {cid: i for i, cid in enumerate(trust.ids)}

    bins = []
    for axial in sorted(groups):
        ids = tuple(groups[axial])
        mean_trust = None
        if trust_index is not None:
            mean_trust = float(
                np.mean([trust.kendall[trust_index[cid]] for cid in ids])
            )
        bins.append(
            HexBin(
                q=axial[0],
                r=axial[1],
                center=grid.center_of(*axial),
                member_ids=ids,
                mean_trust=mean_trust,
                opacity=opacity_for_count(len(ids), c_sat),
            )
        )
    return bins


def rescale(
    projection: Projection2D,
    new_circumradius: float,
    kappa: float,
    origin: tuple[float, float] = (0.0, 0.0),
    trust: TrustScores | None = None,
) -> list[HexBin]:
    """Re-bin at a new granularity, keeping the calibrated density so the
    saturation count scales linearly with hexagon area."""
    return bin_points(projection, new_circumradius, origin=origin,
                      kappa=kappa, trust=trust)


def _modal_class(values: list[str]) -> str:
    counts: dict[str, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    top = max(counts.values())

    def priority(label: str) -> tuple[int, str]:
        return (_CLASS_PRIORITY.get(label.lower(), len(_CLASS_PRIORITY)),
                label)

    return min((v for v, c in counts.items() if c == top), key=priority)


def aggregate_bin(
    hexbin: HexBin,
    feature: str,
    dataset: Mapping[str, Mapping[str, object]],
) -> HexBin:
    """Attach the bin's prevailing value for one feature.

    Categorical features take the modal class (ties broken by activity
    priority, then alphabetically); quantitative features take the
    arithmetic mean. Missing values (None or NaN) are skipped; a bin
    whose members all lack the feature aggregates to None.
    """
    records = []
    for cid in hexbin.member_ids:
        try:
            records.append(dataset[cid])
        except KeyError:
            raise ViewError(f"compound {cid!r} missing from dataset") from None
    if all(feature not in record for record in records):
        raise ViewError(f"unknown feature {feature!r}")

    values = [record[feature] for record in records if feature in record]
    present: list[object] = []
    for v in values:
        if v is None:
            continue
        if isinstance(v, float) and math.isnan(v):
            continue
        present.append(v)
    if not present:
        return replace(hexbin, aggregate=None)

    if all(isinstance(v, str) for v in present):
        return replace(hexbin, aggregate=_modal_class(present))
    if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in present):
        return replace(hexbin, aggregate=float(np.mean(present)))
    raise ViewError(f"feature {feature!r} mixes categorical and numeric values")
