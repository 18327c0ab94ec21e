"""SDF V2000 reading and writing.

Covers the slice of the format the pipeline exchanges with modelling
tools: atom/bond blocks with fixed columns, M CHG charge lines, and
tag/value data fields. Query features, stereo parity and the other
legacy atom-line codes are ignored on input and written as zeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..chem.graph import Atom, Bond, MolecularGraph
from .conformer import AlignError, Conformer3D

_BOND_TYPE_TO_ORDER = {1: "single", 2: "double", 3: "triple", 4: "aromatic"}
_ORDER_TO_BOND_TYPE = {v: k for k, v in _BOND_TYPE_TO_ORDER.items()}

# legacy charge column: 0 means none, 4 is a radical (unsupported, kept neutral)
_LEGACY_CHARGE = {0: 0, 1: 3, 2: 2, 3: 1, 4: 0, 5: -1, 6: -2, 7: -3}


@dataclass
class SdfRecord:
    """One molecule block: raw atoms/bonds plus trailing data fields."""

    title: str
    elements: list[str]
    positions: np.ndarray  # (n, 3)
    bonds: list[tuple[int, int, int]]  # 0-based a, b, bond type code
    charges: dict[int, int] = field(default_factory=dict)
    properties: dict[str, str] = field(default_factory=dict)


def _parse_counts(line: str) -> tuple[int, int]:
    if len(line) < 39 or "V2000" not in line:
        raise AlignError(f"not a V2000 counts line: {line!r}")
    try:
        return int(line[0:3]), int(line[3:6])
    except ValueError as exc:
        raise AlignError(f"bad counts line: {line!r}") from exc


def _parse_record(lines: list[str]) -> SdfRecord:
    if len(lines) < 4:
        raise AlignError("molfile block shorter than its header")
    title = lines[0].strip()
    n_atoms, n_bonds = _parse_counts(lines[3])
    need = 4 + n_atoms + n_bonds
    if len(lines) < need:
        raise AlignError(
            f"molfile {title!r} truncated: expected {need} lines, got {len(lines)}"
        )

    elements: list[str] = []
    positions = np.zeros((n_atoms, 3), dtype=np.float64)
    legacy_charges: dict[int, int] = {}
    for i in range(n_atoms):
        raw = lines[4 + i]
        if len(raw) < 34:
            raise AlignError(f"atom line {i + 1} too short in {title!r}")
        try:
            positions[i, 0] = float(raw[0:10])
            positions[i, 1] = float(raw[10:20])
            positions[i, 2] = float(raw[20:30])
        except ValueError as exc:
            raise AlignError(f"bad coordinates on atom line {i + 1}") from exc
        elements.append(raw[31:34].strip())
        legacy = raw[36:39].strip() if len(raw) >= 39 else ""
        if legacy:
            charge = _LEGACY_CHARGE.get(int(legacy), 0)
            if charge:
                legacy_charges[i] = charge

    bonds: list[tuple[int, int, int]] = []
    for i in range(n_bonds):
        raw = lines[4 + n_atoms + i]
        try:
            a, b, code = int(raw[0:3]), int(raw[3:6]), int(raw[6:9])
        except ValueError as exc:
            raise AlignError(f"bad bond line {i + 1} in {title!r}") from exc
        if not (1 <= a <= n_atoms and 1 <= b <= n_atoms) or a == b:
            raise AlignError(f"bond line {i + 1} references bad atoms in {title!r}")
        bonds.append((a - 1, b - 1, code))

    properties: dict[str, str] = {}
    # M CHG supersedes every legacy charge column when present at all
    chg_lines_seen = False
    charges: dict[int, int] = {}
    idx = need
    while idx < len(lines):
        line = lines[idx]
        if line.startswith("M  CHG"):
            chg_lines_seen = True
            fields = line.split()
            pairs = fields[3:]
            for j in range(0, len(pairs) - 1, 2):
                charges[int(pairs[j]) - 1] = int(pairs[j + 1])
        elif line.startswith("M  END"):
            idx += 1
            break
        idx += 1
    if not chg_lines_seen:
        charges = legacy_charges
    # data fields: "> <tag>" then value lines until a blank
    while idx < len(lines):
        line = lines[idx]
        if line.startswith(">"):
            start = line.find("<")
            end = line.find(">", start + 1)
            if start == -1 or end == -1:
                raise AlignError(f"malformed data header: {line!r}")
            tag = line[start + 1 : end]
            value_lines = []
            idx += 1
            while idx < len(lines) and lines[idx].strip() != "":
                value_lines.append(lines[idx])
                idx += 1
            properties[tag] = "\n".join(value_lines)
        idx += 1

    return SdfRecord(
        title=title,
        elements=elements,
        positions=positions,
        bonds=bonds,
        charges=charges,
        properties=properties,
    )


def parse_sdf(text: str) -> list[SdfRecord]:
    """Split concatenated molfiles on $$$$ and parse each block."""
    records = []
    block: list[str] = []
    for line in text.splitlines():
        if line.strip() == "$$$$":
            if any(l.strip() for l in block):
                records.append(_parse_record(block))
            block = []
        else:
            block.append(line)
    if any(l.strip() for l in block):
        records.append(_parse_record(block))
    return records


def record_to_graph_and_conformer(
    record: SdfRecord, *, drop_hydrogens: bool = True
) -> tuple[MolecularGraph, Conformer3D]:
    """Build the graph/conformer pair the aligner consumes.

    Explicit hydrogens are folded into their heavy neighbour's implicit
    count by default so SDF input lines up with parsed-SMILES graphs.
    """
    n = len(record.elements)
    keep = list(range(n))
    extra_h = [0] * n
    if drop_hydrogens:
        keep = [i for i in range(n) if record.elements[i] != "H"]
        kept = set(keep)
        for a, b, _ in record.bonds:
            if record.elements[a] == "H" and b in kept:
                extra_h[b] += 1
            elif record.elements[b] == "H" and a in kept:
                extra_h[a] += 1
    remap = {old: new for new, old in enumerate(keep)}

    aromatic = [False] * n
    bonds = []
    for a, b, code in record.bonds:
        if code not in _BOND_TYPE_TO_ORDER:
            raise AlignError(f"unsupported bond type {code} in {record.title!r}")
        if a in remap and b in remap:
            order = _BOND_TYPE_TO_ORDER[code]
            if order == "aromatic":
                aromatic[a] = aromatic[b] = True
            bonds.append(Bond(remap[a], remap[b], order))

    atoms = []
    for old in keep:
        atoms.append(
            Atom(
                element=record.elements[old],
                charge=record.charges.get(old, 0),
                aromatic=aromatic[old],
                hydrogens=extra_h[old],
            )
        )
    graph = MolecularGraph(tuple(atoms), tuple(bonds))
    conformer = Conformer3D(
        compound_id=record.title,
        positions=record.positions[keep],
        includes_hydrogens=not drop_hydrogens,
    )
    return graph, conformer


def graph_to_record(
    compound_id: str,
    graph: MolecularGraph,
    conformer: Conformer3D,
    properties: dict[str, str] | None = None,
) -> SdfRecord:
    conformer.validate_for(graph)
    return SdfRecord(
        title=compound_id,
        elements=[a.element for a in graph.atoms],
        positions=np.asarray(conformer.positions, dtype=np.float64),
        bonds=[
            (b.a, b.b, _ORDER_TO_BOND_TYPE[b.order]) for b in graph.bonds
        ],
        charges={
            i: a.charge for i, a in enumerate(graph.atoms) if a.charge != 0
        },
        properties=dict(properties or {}),
    )


def write_sdf(records: list[SdfRecord]) -> str:
    out: list[str] = []
    for rec in records:
        out.append(rec.title)
        out.append("  chemmap")
        out.append("")
        out.append(f"{len(rec.elements):3d}{len(rec.bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
        for i, element in enumerate(rec.elements):
            x, y, z = rec.positions[i]
            out.append(
                f"{x:10.4f}{y:10.4f}{z:10.4f} {element:<3s} 0  0  0  0  0  0  0  0  0  0  0  0"
            )
        for a, b, code in rec.bonds:
            out.append(f"{a + 1:3d}{b + 1:3d}{code:3d}  0")
        charge_items = sorted(rec.charges.items())
        for start in range(0, len(charge_items), 8):
            chunk = charge_items[start : start + 8]
            parts = [f"M  CHG{len(chunk):3d}"]
            for idx, charge in chunk:
                parts.append(f"{idx + 1:4d}{charge:4d}")
            out.append("".join(parts))
        out.append("M  END")
        for tag in sorted(rec.properties):
            out.append(f"> <{tag}>")
            out.append(rec.properties[tag])
            out.append("")
        out.append("$$$$")
    return "\n".join(out) + "\n"
