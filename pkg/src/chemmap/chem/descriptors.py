"""Computed molecular descriptors and drug-likeness summaries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .elements import ATOMIC_MASSES
from .graph import MolecularGraph


class DescriptorError(ValueError):
    pass


COMPUTED_DESCRIPTOR_NAMES = (
    "molecular_weight",
    "heavy_atom_count",
    "ring_count",
    "aromatic_ring_count",
    "rotatable_bond_count",
    "h_bond_donors",
    "h_bond_acceptors",
    "formal_charge_sum",
    "fraction_aromatic_atoms",
)


@dataclass
class DescriptorVector:
    """Named descriptor values with per-entry provenance."""

    values: dict[str, float] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)  # computed|ingested

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def set(self, name: str, value: float, provenance: str) -> None:
        if value != value:  # NaN guard
            raise DescriptorError(f"descriptor {name!r} is NaN")
        self.values[name] = float(value)
        self.provenance[name] = provenance

    def names(self) -> list[str]:
        return list(self.values)


def molecular_weight(graph: MolecularGraph) -> float:
    """Average molecular weight in Da, including attached hydrogens."""
    total = 0.0
    for atom in graph.atoms:
        mass = ATOMIC_MASSES.get(atom.element)
        if mass is None:
            raise DescriptorError(f"unknown element symbol {atom.element!r}")
        total += mass + atom.hydrogens * ATOMIC_MASSES["H"]
    return total


def _is_rotatable(graph: MolecularGraph, bond) -> bool:
    # single, acyclic, and both endpoints are non-terminal heavy atoms
    return (
        bond.order == "single"
        and not graph.bond_in_ring(bond)
        and graph.degree(bond.a) >= 2
        and graph.degree(bond.b) >= 2
    )


def compute_descriptors(graph: MolecularGraph) -> DescriptorVector:
    """Compute the standard descriptor subset for one molecule.

    Covers: molecular_weight, heavy_atom_count, ring_count,
    aromatic_ring_count, rotatable_bond_count, h_bond_donors (N/O with
    attached H), h_bond_acceptors (N/O), formal_charge_sum,
    fraction_aromatic_atoms.
    """
    if len(graph) == 0:
        raise DescriptorError("cannot compute descriptors for an empty graph")

    vector = DescriptorVector()
    n = len(graph)

    aromatic_rings = sum(
        1 for ring in graph.rings if all(graph.atoms[a].aromatic for a in ring)
    )
    donors = sum(
        1
        for atom in graph.atoms
        if atom.element in ("N", "O") and atom.hydrogens >= 1
    )
    acceptors = sum(1 for atom in graph.atoms if atom.element in ("N", "O"))
    rotatable = sum(1 for bond in graph.bonds if _is_rotatable(graph, bond))
    aromatic_atoms = sum(1 for atom in graph.atoms if atom.aromatic)

    vector.set("molecular_weight", molecular_weight(graph), "computed")
    vector.set("heavy_atom_count", float(n), "computed")
    vector.set("ring_count", float(len(graph.rings)), "computed")
    vector.set("aromatic_ring_count", float(aromatic_rings), "computed")
    vector.set("rotatable_bond_count", float(rotatable), "computed")
    vector.set("h_bond_donors", float(donors), "computed")
    vector.set("h_bond_acceptors", float(acceptors), "computed")
    vector.set(
        "formal_charge_sum", float(sum(a.charge for a in graph.atoms)), "computed"
    )
    vector.set("fraction_aromatic_atoms", aromatic_atoms / n, "computed")
    return vector


class Ro5Result(NamedTuple):
    """Rule-of-five violation count; `partial` marks a missing logP."""

    violations: int
    partial: bool


def compute_ro5(
    molecular_weight: float,
    logp: float | None,
    h_bond_donors: int,
    h_bond_acceptors: int,
) -> Ro5Result:
    """Count violated criteria among {MW > 500, logP > 5, donors > 5,
    acceptors > 10}; thresholds are strict. Without logP the count runs
    over the remaining three criteria and is flagged partial."""
    violations = 0
    if molecular_weight > 500:
        violations += 1
    if h_bond_donors > 5:
        violations += 1
    if h_bond_acceptors > 10:
        violations += 1
    if logp is None:
        return Ro5Result(violations, True)
    if logp > 5:
        violations += 1
    return Ro5Result(violations, False)


@dataclass
class DrugLikenessRecord:
    """Per-compound drug-likeness summary. Weight, donor and acceptor
    counts are computed from the graph; logP, pKa and QED arrive from
    external feature sources when available."""

    molecular_weight: float
    h_bond_donors: int
    h_bond_acceptors: int
    ro5_violations: int
    ro5_partial: bool = False
    logp: float | None = None
    acidic_pka: float | None = None
    basic_pka: float | None = None
    qed: float | None = None

    def __post_init__(self) -> None:
        if self.molecular_weight <= 0:
            raise ValueError("molecular_weight must be positive")
        if not 0 <= self.ro5_violations <= 4:
            raise ValueError("ro5_violations out of range 0-4")
        if self.qed is not None and not 0.0 <= self.qed <= 1.0:
            raise ValueError("qed out of range [0, 1]")


def drug_likeness(graph: MolecularGraph, features: dict[str, float] | None = None) -> DrugLikenessRecord:
    """Assemble the drug-likeness record for a molecule, merging computed
    values with any ingested feature columns (logp, acidic_pka,
    basic_pka, qed)."""
    features = features or {}
    descriptors = compute_descriptors(graph)
    logp = features.get("logp")
    donors = int(descriptors["h_bond_donors"])
    acceptors = int(descriptors["h_bond_acceptors"])
    ro5 = compute_ro5(descriptors["molecular_weight"], logp, donors, acceptors)
    return DrugLikenessRecord(
        molecular_weight=descriptors["molecular_weight"],
        h_bond_donors=donors,
        h_bond_acceptors=acceptors,
        ro5_violations=ro5.violations,
        ro5_partial=ro5.partial,
        logp=logp,
        acidic_pka=features.get("acidic_pka"),
        basic_pka=features.get("basic_pka"),
        qed=features.get("qed"),
    )
