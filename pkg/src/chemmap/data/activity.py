"""IC50-based activity labeling."""

from __future__ import annotations

import math

ACTIVE = "Active"
MODERATELY_ACTIVE = "Moderately Active"
INACTIVE = "Inactive"
UNLABELED = "Unlabeled"

# classes a measured IC50 can produce
MEASURED_CLASSES = (ACTIVE, MODERATELY_ACTIVE, INACTIVE)
ACTIVITY_CLASSES = MEASURED_CLASSES + (UNLABELED,)


def label_activity(ic50_nm: float | None) -> str:
    """Categorical potency class from an IC50 in nM.

    Below 10 nM is Active, 10 to 1000 nM inclusive is Moderately
    Active, above that Inactive. A missing or non-positive measurement
    cannot be classified and comes back Unlabeled.
    """
    if ic50_nm is None:
        return UNLABELED
    value = float(ic50_nm)
    if math.isnan(value) or value <= 0.0:
        return UNLABELED
    if value < 10.0:
        return ACTIVE
    if value <= 1000.0:
        return MODERATELY_ACTIVE
    return INACTIVE
