"""Add-new-compound flow: features, projection, session recording."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..chem import (
    COMPUTED_DESCRIPTOR_NAMES,
    MolecularGraph,
    SmilesParseError,
    compute_descriptors,
    compute_ecfp,
    compute_path_fingerprint,
    parse_smiles,
)
from ..data import AddedCompound, SessionState
from ..dr import ProjectorError, project
from .state import DatasetBundle, ServiceError


@dataclass
class NewCompound:
    """Everything computed for a designed compound.

    coords carries one entry per representation: a 2D position where a
    trained projector exists, None where projection is unavailable
    (no projector, or a representation whose features cannot be derived
    from the structure alone).
    """

    compound_id: str
    smiles: str
    graph: MolecularGraph
    descriptors: dict[str, float]
    fingerprints: dict[str, list[int]]  # active bit indices
    coords: dict[str, tuple[float, float] | None] = field(default_factory=dict)
    highlight: bool = True

    @property
    def unavailable(self) -> list[str]:
        return sorted(tag for tag, xy in self.coords.items() if xy is None)


def _feature_vector(tag: str, graph: MolecularGraph) -> np.ndarray | None:
    """Structure-derived features for computable representations."""
    if tag == "ecfp":
        return compute_ecfp(graph).bits.astype(np.float64)
    if tag == "path":
        return compute_path_fingerprint(graph).bits.astype(np.float64)
    if tag == "descriptors":
        vector = compute_descriptors(graph)
        return np.array(
            [vector[name] for name in COMPUTED_DESCRIPTOR_NAMES], dtype=np.float64
        )
    return None  # ingested-only representations (e.g. embeddings)


def project_new_compound(
    bundle: DatasetBundle, smiles: str, compound_id: str
) -> NewCompound:
    try:
        graph = parse_smiles(smiles)
    except SmilesParseError as exc:
        raise ServiceError(
            "parse-error",
            f"cannot parse SMILES at offset {exc.position}: {exc}",
        ) from exc

    descriptors = compute_descriptors(graph)
    ecfp = compute_ecfp(graph)
    path = compute_path_fingerprint(graph)
    compound = NewCompound(
        compound_id=compound_id,
        smiles=smiles,
        graph=graph,
        descriptors={
            name: float(descriptors[name]) for name in COMPUTED_DESCRIPTOR_NAMES
        },
        fingerprints={
            "ecfp": np.flatnonzero(ecfp.bits).tolist(),
            "path": np.flatnonzero(path.bits).tolist(),
        },
    )
    for tag in bundle.dataset.representations:
        projector = bundle.projectors.get(tag)
        vector = _feature_vector(tag, graph)
        if projector is None or vector is None:
            compound.coords[tag] = None
            continue
        if vector.shape[0] != projector.input_width:
            # projector trained on an ingested table we cannot rebuild
            compound.coords[tag] = None
            continue
        try:
            xy = project(projector, vector)
        except ProjectorError as exc:
            raise ServiceError("projection-error", str(exc)) from exc
        compound.coords[tag] = (float(xy[0]), float(xy[1]))
    return compound


def unique_compound_id(
    bundle: DatasetBundle, session: SessionState, requested: str | None
) -> str:
    taken = set(bundle.dataset.ids) | {a.compound_id for a in session.added}
    if requested is not None:
        if requested in taken:
            raise ServiceError(
                "duplicate-id", f"compound id {requested!r} already exists"
            )
        return requested
    k = len(session.added) + 1
    while f"new-{k}" in taken:
        k += 1
    return f"new-{k}"


def record_in_session(session: SessionState, compound: NewCompound) -> None:
    """Append to the session; the reference dataset is never touched."""
    session.added = session.added + (
        AddedCompound(
            compound_id=compound.compound_id,
            smiles=compound.smiles,
            coords={
                tag: xy for tag, xy in compound.coords.items() if xy is not None
            },
        ),
    )
