"""Descriptor table cleaning applied before any matrix is built."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_NAN_FRACTION = 0.10


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class PreprocessReport:
    """What the cleaning pass did, column by column."""

    dropped: tuple[str, ...]
    fill_values: dict[str, float] = field(default_factory=dict)
    nan_fractions: dict[str, float] = field(default_factory=dict)


def preprocess_descriptors(
    names: list[str] | tuple[str, ...], values: np.ndarray
) -> tuple[list[str], np.ndarray, PreprocessReport]:
    """Drop sparse descriptor columns, fill the rest with column maxima.

    Columns with more than 10% missing entries carry too little signal
    and are removed (an all-NaN column always falls in this bucket);
    surviving gaps take the column's maximum observed value. The
    returned table never contains NaN.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise DataError("descriptor table must be two-dimensional")
    if values.shape[1] != len(names):
        raise DataError(
            f"{len(names)} column names for {values.shape[1]} columns"
        )
    if values.shape[1] < 1:
        raise DataError("descriptor table needs at least one column")
    if values.shape[0] < 1:
        raise DataError("descriptor table needs at least one row")

    n_rows = values.shape[0]
    kept_names: list[str] = []
    kept_cols: list[np.ndarray] = []
    dropped: list[str] = []
    fill_values: dict[str, float] = {}
    nan_fractions: dict[str, float] = {}
    for c, name in enumerate(names):
        col = values[:, c]
        nan_mask = np.isnan(col)
        fraction = float(nan_mask.sum()) / n_rows
        nan_fractions[name] = fraction
        if fraction > MAX_NAN_FRACTION:
            dropped.append(name)
            continue
        if nan_mask.any():
            fill = float(np.nanmax(col))
            col = np.where(nan_mask, fill, col)
            fill_values[name] = fill
        kept_names.append(name)
        kept_cols.append(col)

    cleaned = (
        np.column_stack(kept_cols) if kept_cols else np.empty((n_rows, 0))
    )
    report = PreprocessReport(
        dropped=tuple(dropped),
        fill_values=fill_values,
        nan_fractions=nan_fractions,
    )
    return kept_names, cleaned, report
