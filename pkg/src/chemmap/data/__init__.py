"""Dataset ingestion, preprocessing, sessions, external features."""

from .activity import (
    ACTIVE,
    ACTIVITY_CLASSES,
    INACTIVE,
    MEASURED_CLASSES,
    MODERATELY_ACTIVE,
    UNLABELED,
    label_activity,
)
from .dataset import (
    COMPUTED_TAGS,
    MAX_REPRESENTATIONS,
    CompoundRecord,
    Dataset,
    load_dataset,
)
from .external import (
    BASE_URL_ENV,
    FeatureUpdate,
    FetchResult,
    apply_feature_update,
    fetch_external_features,
)
from .preprocess import DataError, PreprocessReport, preprocess_descriptors
from .session import (
    SESSION_VERSION,
    AddedCompound,
    SessionState,
    ViewConfig,
    load_session,
    save_session,
    session_from_document,
    session_to_document,
)

__all__ = [
    "ACTIVE",
    "ACTIVITY_CLASSES",
    "AddedCompound",
    "BASE_URL_ENV",
    "COMPUTED_TAGS",
    "CompoundRecord",
    "DataError",
    "Dataset",
    "FeatureUpdate",
    "FetchResult",
    "INACTIVE",
    "MAX_REPRESENTATIONS",
    "MEASURED_CLASSES",
    "MODERATELY_ACTIVE",
    "PreprocessReport",
    "SESSION_VERSION",
    "SessionState",
    "UNLABELED",
    "ViewConfig",
    "apply_feature_update",
    "fetch_external_features",
    "label_activity",
    "load_dataset",
    "load_session",
    "preprocess_descriptors",
    "save_session",
    "session_from_document",
    "session_to_document",
]
