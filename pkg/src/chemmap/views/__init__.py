"""View models: hexagonal aggregation, selections, difference view."""

from .difference import DifferenceViewModel, InnerHex, difference_view
from .hexgrid import (
    OPACITY_FLOOR,
    HexBin,
    HexGrid,
    ViewError,
    aggregate_bin,
    bin_points,
    calibrate_kappa,
    hex_distance,
    nearest_hexes,
    opacity_for_count,
    rescale,
    saturation_count,
)
from .selection import PROVENANCES, Selection, lasso_select, point_in_polygon

__all__ = [
    "DifferenceViewModel",
    "HexBin",
    "HexGrid",
    "InnerHex",
    "OPACITY_FLOOR",
    "PROVENANCES",
    "Selection",
    "ViewError",
    "aggregate_bin",
    "bin_points",
    "calibrate_kappa",
    "difference_view",
    "hex_distance",
    "lasso_select",
    "nearest_hexes",
    "opacity_for_count",
    "point_in_polygon",
    "rescale",
    "saturation_count",
]
