"""HTTP/JSON service and the offline pipeline CLI."""

from .app import ADD_COMPOUND_TIMEOUT, ALIGN_TIMEOUT, create_app
from .artifacts import (
    ARTIFACT_VERSION,
    ArtifactError,
    available_tags,
    load_projection,
    load_projector,
    load_trust,
    save_projection,
    save_projector,
    save_trust,
)
from .cli import build_parser, main
from .compounds import NewCompound, project_new_compound, unique_compound_id
from .state import DatasetBundle, ServiceError, ServiceState, load_bundle
from .table import filter_ids, group_by_hexagon, parse_filter, sort_ids, table_rows

__all__ = [
    "ADD_COMPOUND_TIMEOUT",
    "ALIGN_TIMEOUT",
    "ARTIFACT_VERSION",
    "ArtifactError",
    "DatasetBundle",
    "NewCompound",
    "ServiceError",
    "ServiceState",
    "available_tags",
    "build_parser",
    "create_app",
    "filter_ids",
    "group_by_hexagon",
    "load_bundle",
    "load_projection",
    "load_projector",
    "load_trust",
    "main",
    "parse_filter",
    "project_new_compound",
    "save_projection",
    "save_projector",
    "save_trust",
    "sort_ids",
    "table_rows",
    "unique_compound_id",
]
