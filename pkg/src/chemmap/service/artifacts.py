"""Versioned on-disk artifacts produced by the pipeline.

Everything is JSON with sorted keys so re-running a stage with the
same seed reproduces files byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..dr import ParametricProjector, Projection2D, TrustScores

ARTIFACT_VERSION = 1


class ArtifactError(ValueError):
    pass


def _dump(payload: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _load(path: Path, kind: str) -> dict:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ArtifactError(f"cannot read {kind} artifact {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"{kind} artifact {path.name} is not JSON: {exc}") from exc
    version = payload.get("artifact_version")
    if version != ARTIFACT_VERSION:
        raise ArtifactError(
            f"{kind} artifact version {version!r}, expected {ARTIFACT_VERSION}"
        )
    if payload.get("kind") != kind:
        raise ArtifactError(
            f"{path.name} holds a {payload.get('kind')!r} artifact, "
            f"expected {kind!r}"
        )
    return payload


def dataset_dir(artifacts_dir: str | Path, dataset_name: str) -> Path:
    return Path(artifacts_dir) / dataset_name


def projection_path(artifacts_dir: str | Path, dataset: str, tag: str) -> Path:
    return dataset_dir(artifacts_dir, dataset) / f"projection_{tag}.json"


def trust_path(artifacts_dir: str | Path, dataset: str, tag: str) -> Path:
    return dataset_dir(artifacts_dir, dataset) / f"trust_{tag}.json"


def projector_path(artifacts_dir: str | Path, dataset: str, tag: str) -> Path:
    return dataset_dir(artifacts_dir, dataset) / f"projector_{tag}.json"


def _clean_metadata(metadata: dict) -> dict:
    out = {}
    for key, value in metadata.items():
        if isinstance(value, (np.floating, np.integer)):
            value = value.item()
        if isinstance(value, (str, int, float, bool)) or value is None:
            out[str(key)] = value
    return out


def save_projection(
    projection: Projection2D, artifacts_dir: str | Path, dataset: str, seed: int
) -> Path:
    path = projection_path(artifacts_dir, dataset, projection.tag)
    _dump(
        {
            "artifact_version": ARTIFACT_VERSION,
            "kind": "projection",
            "dataset": dataset,
            "tag": projection.tag,
            "source": projection.source,
            "seed": seed,
            "ids": list(projection.ids),
            "coords": projection.coords.tolist(),
            "metadata": _clean_metadata(projection.metadata),
        },
        path,
    )
    return path


def load_projection(artifacts_dir: str | Path, dataset: str, tag: str) -> Projection2D:
    payload = _load(projection_path(artifacts_dir, dataset, tag), "projection")
    return Projection2D(
        tag=payload["tag"],
        ids=tuple(payload["ids"]),
        coords=np.asarray(payload["coords"], dtype=np.float64),
        source=payload["source"],
        metadata=payload.get("metadata", {}),
    )


def save_trust(
    scores: TrustScores, artifacts_dir: str | Path, dataset: str
) -> Path:
    path = trust_path(artifacts_dir, dataset, scores.tag)
    _dump(
        {
            "artifact_version": ARTIFACT_VERSION,
            "kind": "trust",
            "dataset": dataset,
            "tag": scores.tag,
            "ids": list(scores.ids),
            "pearson": scores.pearson.tolist(),
            "kendall": scores.kendall.tolist(),
            "degenerate": scores.degenerate.astype(bool).tolist(),
        },
        path,
    )
    return path


def load_trust(artifacts_dir: str | Path, dataset: str, tag: str) -> TrustScores:
    payload = _load(trust_path(artifacts_dir, dataset, tag), "trust")
    return TrustScores(
        tag=payload["tag"],
        ids=tuple(payload["ids"]),
        pearson=np.asarray(payload["pearson"], dtype=np.float64),
        kendall=np.asarray(payload["kendall"], dtype=np.float64),
        degenerate=np.asarray(payload["degenerate"], dtype=bool),
    )


def save_projector(
    projector: ParametricProjector,
    artifacts_dir: str | Path,
    dataset: str,
    tag: str,
    seed: int,
) -> Path:
    path = projector_path(artifacts_dir, dataset, tag)
    _dump(
        {
            "artifact_version": ARTIFACT_VERSION,
            "kind": "projector",
            "dataset": dataset,
            "tag": tag,
            "seed": seed,
            "model": projector.to_dict(),
        },
        path,
    )
    return path


def load_projector(
    artifacts_dir: str | Path, dataset: str, tag: str
) -> ParametricProjector:
    payload = _load(projector_path(artifacts_dir, dataset, tag), "projector")
    return ParametricProjector.from_dict(payload["model"])


def available_tags(
    artifacts_dir: str | Path, dataset: str, kind: str
) -> list[str]:
    """Representation tags that have an artifact of the given kind."""
    directory = dataset_dir(artifacts_dir, dataset)
    prefix = f"{kind}_"
    if not directory.is_dir():
        return []
    return sorted(
        p.stem[len(prefix):]
        for p in directory.glob(f"{prefix}*.json")
    )
