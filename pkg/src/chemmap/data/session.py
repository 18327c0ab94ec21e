"""Session persistence: named selections, view config, added compounds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..views import Selection
from .preprocess import DataError

SESSION_VERSION = 1


@dataclass(frozen=True)
class ViewConfig:
    active_representations: tuple[str, ...] = ()
    hex_radius: float = 1.0
    color_feature: str | None = None


@dataclass(frozen=True)
class AddedCompound:
    """A designed compound projected into the existing maps.

    Lives in the session, not the dataset: reference datasets stay
    immutable and the additions travel with the analyst's state.
    """

    compound_id: str
    smiles: str
    coords: dict[str, tuple[float, float]] = field(default_factory=dict)


@dataclass
class SessionState:
    dataset_name: str
    selections: dict[str, Selection] = field(default_factory=dict)
    view: ViewConfig = field(default_factory=ViewConfig)
    added: tuple[AddedCompound, ...] = ()


def session_to_document(state: SessionState) -> dict:
    return {
        "version": SESSION_VERSION,
        "dataset": state.dataset_name,
        "selections": {
            name: {
                "ids": sorted(sel.ids),
                "provenance": sel.provenance,
            }
            for name, sel in sorted(state.selections.items())
        },
        "view": {
            "active_representations": list(state.view.active_representations),
            "hex_radius": state.view.hex_radius,
            "color_feature": state.view.color_feature,
        },
        "added": [
            {
                "id": a.compound_id,
                "smiles": a.smiles,
                "coords": {
                    tag: [x, y] for tag, (x, y) in sorted(a.coords.items())
                },
            }
            for a in state.added
        ],
    }


def session_from_document(
    document: dict, known_datasets: set[str] | None = None
) -> SessionState:
    version = document.get("version")
    if version != SESSION_VERSION:
        raise DataError(
            f"session version {version!r}, expected {SESSION_VERSION}"
        )
    dataset_name = document["dataset"]
    if known_datasets is not None and dataset_name not in known_datasets:
        raise DataError(f"session references unknown dataset {dataset_name!r}")
    selections = {
        name: Selection(
            ids=frozenset(entry["ids"]),
            provenance=entry["provenance"],
            name=name,
        )
        for name, entry in document.get("selections", {}).items()
    }
    view_doc = document.get("view", {})
    view = ViewConfig(
        active_representations=tuple(view_doc.get("active_representations", ())),
        hex_radius=float(view_doc.get("hex_radius", 1.0)),
        color_feature=view_doc.get("color_feature"),
    )
    added = tuple(
        AddedCompound(
            compound_id=entry["id"],
            smiles=entry["smiles"],
            coords={
                tag: (float(xy[0]), float(xy[1]))
                for tag, xy in entry.get("coords", {}).items()
            },
        )
        for entry in document.get("added", ())
    )
    return SessionState(
        dataset_name=dataset_name,
        selections=selections,
        view=view,
        added=added,
    )


def save_session(state: SessionState, path: str | Path) -> None:
    text = json.dumps(session_to_document(state), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_session(
    path: str | Path, known_datasets: set[str] | None = None
) -> SessionState:
    p = Path(path)
    try:
        document = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read session {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"session {p.name} is not valid JSON: {exc}") from exc
    return session_from_document(document, known_datasets)
