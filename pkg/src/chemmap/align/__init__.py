"""3D alignment: MCS matching, Kabsch superposition, occurrence shading."""

from .conformer import AlignError, Conformer3D
from .mcs import DEFAULT_TIME_BUDGET, MCSResult, find_mcs
from .rigid import (
    DEFAULT_CLUSTER_RADIUS,
    OCCURRENCE_FLOOR,
    AlignmentResult,
    CompoundAlignment,
    CompoundOpacity,
    KabschResult,
    align_compounds,
    invert_opacity,
    kabsch_align,
    occurrence_opacity,
)
from .sdf import (
    SdfRecord,
    graph_to_record,
    parse_sdf,
    record_to_graph_and_conformer,
    write_sdf,
)

__all__ = [
    "AlignError",
    "AlignmentResult",
    "CompoundAlignment",
    "CompoundOpacity",
    "Conformer3D",
    "DEFAULT_CLUSTER_RADIUS",
    "DEFAULT_TIME_BUDGET",
    "KabschResult",
    "MCSResult",
    "OCCURRENCE_FLOOR",
    "SdfRecord",
    "align_compounds",
    "find_mcs",
    "graph_to_record",
    "invert_opacity",
    "kabsch_align",
    "occurrence_opacity",
    "parse_sdf",
    "record_to_graph_and_conformer",
    "write_sdf",
]
