"""Dataset assembly from a JSON manifest naming CSV/SDF parts."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from ..align import Conformer3D, parse_sdf, record_to_graph_and_conformer
from ..chem import (
    COMPUTED_DESCRIPTOR_NAMES,
    DrugLikenessRecord,
    MolecularGraph,
    SmilesParseError,
    compute_descriptors,
    compute_ecfp,
    compute_path_fingerprint,
    drug_likeness,
    parse_smiles,
)
from ..dr import EmbeddingMatrix, Projection2D, TrustScores
from .activity import ACTIVITY_CLASSES, label_activity
from .preprocess import DataError, preprocess_descriptors

MAX_REPRESENTATIONS = 4
COMPUTED_TAGS = ("ecfp", "path", "descriptors")

# drug-likeness fields that can arrive as feature columns
_INGESTED_FEATURES = ("logp", "acidic_pka", "basic_pka", "qed")


@dataclass(frozen=True)
class CompoundRecord:
    compound_id: str
    smiles: str
    activities: dict[str, str]
    drug_likeness: DrugLikenessRecord
    features: dict[str, object] = field(default_factory=dict)
    graph: MolecularGraph | None = None


@dataclass
class Dataset:
    """Immutable-after-load compound collection and its derived matrices.

    Projections and trust scores start empty; the pipeline attaches
    them per representation once fitted.
    """

    name: str
    compounds: tuple[CompoundRecord, ...]
    representations: dict[str, EmbeddingMatrix] = field(default_factory=dict)
    projections: dict[str, Projection2D] = field(default_factory=dict)
    trust: dict[str, TrustScores] = field(default_factory=dict)
    conformers: dict[str, Conformer3D] = field(default_factory=dict)
    # graphs in SDF atom order, index-aligned with each conformer's rows
    conformer_graphs: dict[str, MolecularGraph] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [c.compound_id for c in self.compounds]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise DataError(f"duplicate compound ids: {dupes[:10]}")
        self._ids = tuple(ids)
        self._index = {cid: k for k, cid in enumerate(ids)}
        if len(self.representations) > MAX_REPRESENTATIONS:
            raise DataError(
                f"at most {MAX_REPRESENTATIONS} representations supported"
            )
        for tag, matrix in self.representations.items():
            if matrix.ids != self._ids:
                raise DataError(
                    f"representation {tag!r} is not row-aligned with the "
                    "compound list"
                )
        for compound in self.compounds:
            for target, cls in compound.activities.items():
                if cls not in ACTIVITY_CLASSES:
                    raise DataError(
                        f"compound {compound.compound_id!r} has unknown "
                        f"activity class {cls!r} for target {target!r}"
                    )

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def n(self) -> int:
        return len(self.compounds)

    def index_of(self, compound_id: str) -> int:
        try:
            return self._index[compound_id]
        except KeyError:
            raise DataError(f"unknown compound id {compound_id!r}") from None

    def compound_for(self, compound_id: str) -> CompoundRecord:
        return self.compounds[self.index_of(compound_id)]

    def class_counts(self, target: str) -> dict[str, int]:
        counts: dict[str, int] = {}
        for compound in self.compounds:
            cls = compound.activities.get(target)
            if cls is not None:
                counts[cls] = counts.get(cls, 0) + 1
        return counts

    def feature_map(self) -> dict[str, dict[str, object]]:
        """Per-compound rows for color encodings, tables and binning."""
        out: dict[str, dict[str, object]] = {}
        for c in self.compounds:
            row: dict[str, object] = dict(c.features)
            for target, cls in c.activities.items():
                row[f"activity:{target}"] = cls
            dl = c.drug_likeness
            row["molecular_weight"] = dl.molecular_weight
            row["h_bond_donors"] = dl.h_bond_donors
            row["h_bond_acceptors"] = dl.h_bond_acceptors
            row["ro5_violations"] = dl.ro5_violations
            for name in _INGESTED_FEATURES:
                value = getattr(dl, name)
                if value is not None:
                    row[name] = value
            out[c.compound_id] = row
        return out


def _read_table(path: Path) -> list[dict[str, str]]:
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise DataError(f"{path.name}: missing header row")
            return list(reader)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _parse_feature(raw: str) -> object:
    text = raw.strip()
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def _id_mismatch(kind: str, expected: tuple[str, ...], found: list[str]) -> None:
    if list(expected) == found:
        return
    if len(expected) != len(found):
        raise DataError(
            f"{kind}: {len(found)} rows for {len(expected)} compounds"
        )
    offenders = [f for e, f in zip(expected, found) if e != f][:10]
    raise DataError(f"{kind}: ids do not match the compound table: {offenders}")


def _read_matrix(path: Path, tag: str, ids: tuple[str, ...]) -> np.ndarray:
    rows = _read_table(path)
    header = list(rows[0].keys()) if rows else []
    if not header or header[0] != "id":
        raise DataError(f"{path.name}: first column must be 'id'")
    _id_mismatch(f"representation {tag!r}", ids, [r["id"] for r in rows])
    names = header[1:]
    matrix = np.empty((len(rows), len(names)), dtype=np.float64)
    for i, row in enumerate(rows):
        for j, name in enumerate(names):
            text = (row[name] or "").strip()
            matrix[i, j] = np.nan if text == "" else float(text)
    if tag == "descriptors":
        # ingested descriptor tables go through the standard cleaning
        _, matrix, _ = preprocess_descriptors(names, matrix)
    elif np.isnan(matrix).any():
        raise DataError(f"representation {tag!r} contains missing values")
    return matrix


def _computed_matrix(tag: str, graphs: list[MolecularGraph]) -> np.ndarray:
    if tag == "ecfp":
        return np.array(
            [compute_ecfp(g).bits for g in graphs], dtype=np.float64
        )
    if tag == "path":
        return np.array(
            [compute_path_fingerprint(g).bits for g in graphs],
            dtype=np.float64,
        )
    vectors = [compute_descriptors(g) for g in graphs]
    raw = np.array(
        [[v[name] for name in COMPUTED_DESCRIPTOR_NAMES] for v in vectors],
        dtype=np.float64,
    )
    _, cleaned, _ = preprocess_descriptors(list(COMPUTED_DESCRIPTOR_NAMES), raw)
    return cleaned


def load_dataset(manifest_path: str | Path) -> Dataset:
    """Build a Dataset from a manifest document.

    The manifest names a compound CSV (header: id, smiles, then
    activity and feature columns), optional row-aligned representation
    CSVs, and an optional SDF conformer file. ECFP, path fingerprints
    and computed descriptors are derived from the SMILES for any
    representation not supplied; "compute": false skips that for
    datasets that only need the compound table.
    """
    path = Path(manifest_path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"manifest {path.name} is not valid JSON: {exc}") from exc
    if "compounds" not in manifest:
        raise DataError("manifest must name a 'compounds' CSV")
    base = path.parent
    name = manifest.get("name", path.stem)
    activity_columns: Mapping[str, str] = manifest.get("activity_columns", {})

    rows = _read_table(base / manifest["compounds"])
    if not rows:
        raise DataError("compound table is empty")
    header = list(rows[0].keys())
    for required in ("id", "smiles"):
        if required not in header:
            raise DataError(f"compound table lacks a {required!r} column")
    for target, column in activity_columns.items():
        if column not in header:
            raise DataError(
                f"activity column {column!r} for target {target!r} missing"
            )
    activity_set = set(activity_columns.values())
    feature_names = [
        h for h in header if h not in {"id", "smiles"} and h not in activity_set
    ]

    compounds: list[CompoundRecord] = []
    graphs: list[MolecularGraph] = []
    for row in rows:
        cid = row["id"].strip()
        smiles = row["smiles"].strip()
        try:
            graph = parse_smiles(smiles)
        except SmilesParseError as exc:
            raise DataError(f"compound {cid!r}: {exc}") from exc
        activities = {}
        for target, column in activity_columns.items():
            raw = (row[column] or "").strip()
            ic50 = None
            if raw:
                try:
                    ic50 = float(raw)
                except ValueError:
                    raise DataError(
                        f"compound {cid!r}: bad IC50 value {raw!r}"
                    ) from None
            activities[target] = label_activity(ic50)
        features = {name: _parse_feature(row[name] or "") for name in feature_names}
        ingested = {
            key: value
            for key in _INGESTED_FEATURES
            if isinstance(value := features.get(key), float)
        }
        record = CompoundRecord(
            compound_id=cid,
            smiles=smiles,
            activities=activities,
            drug_likeness=drug_likeness(graph, ingested),
            features=features,
            graph=graph,
        )
        compounds.append(record)
        graphs.append(graph)
    ids = tuple(c.compound_id for c in compounds)

    representations: dict[str, EmbeddingMatrix] = {}
    declared: Mapping[str, str] = manifest.get("representations", {})
    for tag, rel in declared.items():
        matrix = _read_matrix(base / rel, tag, ids)
        representations[tag] = EmbeddingMatrix(tag=tag, ids=ids, X=matrix)
    if manifest.get("compute", True):
        for tag in COMPUTED_TAGS:
            if tag not in representations:
                representations[tag] = EmbeddingMatrix(
                    tag=tag, ids=ids, X=_computed_matrix(tag, graphs)
                )

    conformers: dict[str, Conformer3D] = {}
    conformer_graphs: dict[str, MolecularGraph] = {}
    if "conformers" in manifest:
        sdf_path = base / manifest["conformers"]
        try:
            text = sdf_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot read {sdf_path}: {exc}") from exc
        id_set = set(ids)
        unknown: list[str] = []
        for record in parse_sdf(text):
            if record.title not in id_set:
                unknown.append(record.title)
                continue
            graph, conformer = record_to_graph_and_conformer(record)
            conformers[record.title] = conformer
            conformer_graphs[record.title] = graph
        if unknown:
            raise DataError(
                f"conformers: ids do not match the compound table: {unknown[:10]}"
            )

    return Dataset(
        name=name,
        compounds=tuple(compounds),
        representations=representations,
        conformers=conformers,
        conformer_graphs=conformer_graphs,
    )
