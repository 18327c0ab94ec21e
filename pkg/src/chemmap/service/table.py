"""Tabular view logic: row filtering, sorting, hexagon grouping."""

from __future__ import annotations

import math
import re
from typing import Mapping

import numpy as np

from ..data import Dataset
from ..dr import Projection2D, TrustScores
from ..views import HexGrid, bin_points
from .state import ServiceError

# ordered so two-char operators win over their one-char prefixes
_FILTER_RE = re.compile(r"^\s*(.+?)\s*(>=|<=|==|!=|>|<)\s*(.+?)\s*$")

_NUMERIC_OPS = {
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
}


def _is_missing(value: object) -> bool:
    if value is None:
        return True
    return isinstance(value, float) and math.isnan(value)


def parse_filter(spec: str) -> tuple[str, str, str]:
    match = _FILTER_RE.match(spec)
    if match is None:
        raise ServiceError(
            "bad-filter",
            f"cannot parse filter {spec!r}; expected <feature> <op> <value>",
        )
    return match.group(1), match.group(2), match.group(3)


def _passes(value: object, op: str, raw: str) -> bool:
    """Missing values never satisfy a predicate."""
    if op in _NUMERIC_OPS:
        try:
            threshold = float(raw)
        except ValueError:
            raise ServiceError(
                "bad-filter", f"operator {op!r} needs a numeric value, got {raw!r}"
            ) from None
        if _is_missing(value) or not isinstance(value, (int, float)):
            return False
        return _NUMERIC_OPS[op](float(value), threshold)
    # equality: numeric when both sides coerce, string match otherwise
    if _is_missing(value):
        return False
    try:
        matches = float(value) == float(raw)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        matches = str(value) == raw
    return matches if op == "==" else not matches


def check_feature_known(feature: str, rows: Mapping[str, Mapping[str, object]]) -> None:
    if all(feature not in row for row in rows.values()):
        raise ServiceError("unknown-feature", f"unknown feature {feature!r}")


def filter_ids(
    ids: list[str],
    rows: Mapping[str, Mapping[str, object]],
    filters: list[str],
) -> list[str]:
    """Apply every filter (conjunction), preserving input order."""
    kept = list(ids)
    for spec in filters:
        feature, op, raw = parse_filter(spec)
        check_feature_known(feature, rows)
        kept = [cid for cid in kept if _passes(rows[cid].get(feature), op, raw)]
    return kept


def sort_ids(
    ids: list[str],
    rows: Mapping[str, Mapping[str, object]],
    feature: str,
    descending: bool = False,
) -> list[str]:
    """Stable sort on one feature; rows lacking the value go last."""
    check_feature_known(feature, rows)
    present = [
        (cid, rows[cid][feature])
        for cid in ids
        if not _is_missing(rows[cid].get(feature))
    ]
    missing = [cid for cid in ids if _is_missing(rows[cid].get(feature))]
    values = [v for _, v in present]
    if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        keyed = sorted(present, key=lambda p: float(p[1]), reverse=descending)
    elif all(isinstance(v, str) for v in values):
        keyed = sorted(present, key=lambda p: p[1], reverse=descending)
    else:
        raise ServiceError(
            "mixed-types", f"feature {feature!r} mixes numeric and string values"
        )
    return [cid for cid, _ in keyed] + missing


def table_rows(
    dataset: Dataset,
    filters: list[str] | None = None,
    sort: str | None = None,
    descending: bool = False,
) -> list[dict[str, object]]:
    rows = dataset.feature_map()
    ids = list(dataset.ids)
    if filters:
        ids = filter_ids(ids, rows, filters)
    if sort is not None:
        ids = sort_ids(ids, rows, sort, descending)
    return [{"id": cid, **rows[cid]} for cid in ids]


def quartiles(values: list[float]) -> dict[str, float]:
    q = np.percentile(np.asarray(values, dtype=np.float64), [0, 25, 50, 75, 100])
    return {
        "min": float(q[0]),
        "q1": float(q[1]),
        "median": float(q[2]),
        "q3": float(q[3]),
        "max": float(q[4]),
    }


def group_by_hexagon(
    dataset: Dataset,
    projection: Projection2D,
    radius: float,
    feature: str,
    trust: TrustScores | None = None,
    filters: list[str] | None = None,
) -> list[dict[str, object]]:
    """Collapse table rows into hexagon groups with feature quartiles.

    Groups follow the current bin assignment exactly, so a radius change
    regroups immediately. Rows filtered out are excluded before binning.
    """
    rows = dataset.feature_map()
    check_feature_known(feature, rows)
    kept = set(dataset.ids if not filters else filter_ids(list(dataset.ids), rows, filters))
    grid = HexGrid(radius)
    groups: list[dict[str, object]] = []
    for hexbin in bin_points(projection, radius, trust=trust):
        member_ids = [cid for cid in hexbin.member_ids if cid in kept]
        if not member_ids:
            continue
        values: list[float] = []
        for cid in member_ids:
            value = rows[cid].get(feature)
            if _is_missing(value):
                continue
            if isinstance(value, str):
                raise ServiceError(
                    "bad-feature",
                    f"quartiles need a numeric feature, {feature!r} is categorical",
                )
            values.append(float(value))  # type: ignore[arg-type]
        groups.append(
            {
                "hex": [hexbin.q, hexbin.r],
                "center": list(grid.center_of(hexbin.q, hexbin.r)),
                "member_ids": member_ids,
                "count": len(member_ids),
                "feature": feature,
                "quartiles": quartiles(values) if values else None,
            }
        )
    return groups
