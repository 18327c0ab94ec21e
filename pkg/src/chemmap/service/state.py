"""In-process service state: datasets, artifacts, sessions."""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..data import Dataset, SessionState
from ..dr import ParametricProjector
from .artifacts import (
    ARTIFACT_VERSION,
    available_tags,
    load_projection,
    load_projector,
    load_trust,
)


class ServiceError(ValueError):
    """Engine/state failure with a machine-readable code."""

    def __init__(self, code: str, message: str, status: int = 400):
        super().__init__(message)
        self.code = code
        self.status = status


@dataclass
class DatasetBundle:
    """A dataset plus the fitted artifacts the service works from."""

    dataset: Dataset
    projectors: dict[str, ParametricProjector] = field(default_factory=dict)
    artifact_version: int = ARTIFACT_VERSION

    @property
    def name(self) -> str:
        return self.dataset.name

    def projection_for(self, tag: str):
        try:
            return self.dataset.projections[tag]
        except KeyError:
            known = sorted(self.dataset.projections)
            raise ServiceError(
                "unknown-representation",
                f"no projection for representation {tag!r}; available: {known}",
                status=404,
            ) from None

    def trust_for(self, tag: str):
        try:
            return self.dataset.trust[tag]
        except KeyError:
            raise ServiceError(
                "missing-artifact",
                f"no trust scores for representation {tag!r}",
                status=404,
            ) from None


def load_bundle(dataset: Dataset, artifacts_dir: str | Path) -> DatasetBundle:
    """Attach every stored projection/trust/projector artifact."""
    bundle = DatasetBundle(dataset=dataset)
    for tag in available_tags(artifacts_dir, dataset.name, "projection"):
        projection = load_projection(artifacts_dir, dataset.name, tag)
        if projection.ids != dataset.ids:
            raise ServiceError(
                "stale-artifact",
                f"projection {tag!r} was fitted for different compounds; "
                "re-run fit-tsne",
            )
        dataset.projections[tag] = projection
    for tag in available_tags(artifacts_dir, dataset.name, "trust"):
        scores = load_trust(artifacts_dir, dataset.name, tag)
        if scores.ids == dataset.ids:
            dataset.trust[tag] = scores
    for tag in available_tags(artifacts_dir, dataset.name, "projector"):
        bundle.projectors[tag] = load_projector(artifacts_dir, dataset.name, tag)
    return bundle


class ServiceState:
    """Shared state behind the HTTP app.

    Datasets and artifacts are immutable; sessions are the only mutable
    piece and each one is guarded by its own lock.
    """

    def __init__(self, bundles: list[DatasetBundle]):
        self.bundles: dict[str, DatasetBundle] = {b.name: b for b in bundles}
        self.sessions: dict[str, SessionState] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def bundle_for(self, name: str) -> DatasetBundle:
        try:
            return self.bundles[name]
        except KeyError:
            raise ServiceError(
                "unknown-dataset",
                f"unknown dataset {name!r}; available: {sorted(self.bundles)}",
                status=404,
            ) from None

    def create_session(self, dataset_name: str) -> str:
        self.bundle_for(dataset_name)
        with self._registry_lock:
            session_id = uuid.uuid4().hex
            self.sessions[session_id] = SessionState(dataset_name=dataset_name)
            self._session_locks[session_id] = threading.Lock()
        return session_id

    def adopt_session(self, state: SessionState) -> str:
        self.bundle_for(state.dataset_name)
        with self._registry_lock:
            session_id = uuid.uuid4().hex
            self.sessions[session_id] = state
            self._session_locks[session_id] = threading.Lock()
        return session_id

    def session_for(self, session_id: str) -> SessionState:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise ServiceError(
                "unknown-session",
                f"unknown session {session_id!r}",
                status=404,
            ) from None

    def session_lock(self, session_id: str) -> threading.Lock:
        self.session_for(session_id)
        return self._session_locks[session_id]
