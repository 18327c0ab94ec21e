"""Rigid-body superposition and occurrence shading.

Kabsch gives the least-squares rotation between corresponding atom
sets; occurrence opacity grades how often an atom position recurs
across the aligned ensemble so shared scaffolds render solid and
decorations fade.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..chem.graph import MolecularGraph
from .conformer import AlignError, Conformer3D
from .mcs import DEFAULT_TIME_BUDGET, MCSResult, find_mcs

OCCURRENCE_FLOOR = 0.08
DEFAULT_CLUSTER_RADIUS = 0.5  # Å


@dataclass(frozen=True)
class KabschResult:
    rotation: np.ndarray  # (3, 3), right-handed orthonormal
    translation: np.ndarray  # (3,)
    rmsd: float
    transformed: np.ndarray  # moving points mapped into the reference frame

    def apply(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        return points @ self.rotation.T + self.translation


def _as_points(name: str, points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 3:
        raise AlignError(f"{name} must be an n×3 array")
    if not np.isfinite(points).all():
        raise AlignError(f"{name} contains non-finite coordinates")
    return points


def kabsch_align(
    reference: np.ndarray,
    moving: np.ndarray,
    correspondence: list[tuple[int, int]] | None = None,
) -> KabschResult:
    """Optimal rotation + translation carrying moving onto reference.

    correspondence lists (reference row, moving row) pairs; omit it when
    the arrays are already row-aligned. Needs at least three pairs that
    do not fall on a single line, otherwise the rotation about that
    line is unconstrained.
    """
    reference = _as_points("reference", reference)
    moving = _as_points("moving", moving)
    if correspondence is None:
        if reference.shape[0] != moving.shape[0]:
            raise AlignError(
                "row-aligned call needs equally many reference and moving points"
            )
        correspondence = [(i, i) for i in range(reference.shape[0])]
    if len(correspondence) < 3:
        raise AlignError("Kabsch needs at least three point pairs")
    ref_idx = [p[0] for p in correspondence]
    mov_idx = [p[1] for p in correspondence]
    q = reference[ref_idx]
    p = moving[mov_idx]

    q_mean = q.mean(axis=0)
    p_mean = p.mean(axis=0)
    qc = q - q_mean
    pc = p - p_mean
    for name, centered in (("reference", qc), ("moving", pc)):
        s = np.linalg.svd(centered, compute_uv=False)
        if s[0] <= 0.0 or s[1] <= 1e-9 * s[0]:
            raise AlignError(f"{name} correspondence points are collinear")

    h = pc.T @ qc
    u, _, vt = np.linalg.svd(h)
    d = np.sign(np.linalg.det(vt.T @ u.T))
    rotation = vt.T @ np.diag([1.0, 1.0, d]) @ u.T
    translation = q_mean - rotation @ p_mean
    mapped = p @ rotation.T + translation
    rmsd = float(np.sqrt(np.mean(np.sum((mapped - q) ** 2, axis=1))))
    return KabschResult(
        rotation=rotation,
        translation=translation,
        rmsd=rmsd,
        transformed=moving @ rotation.T + translation,
    )


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class CompoundOpacity:
    compound_id: str
    occurrence: np.ndarray  # per atom: distinct compounds sharing its site
    atom_opacity: np.ndarray
    bond_opacity: np.ndarray


def occurrence_opacity(
    graphs: list[MolecularGraph],
    conformers: list[Conformer3D],
    cluster_radius: float = DEFAULT_CLUSTER_RADIUS,
    floor: float = OCCURRENCE_FLOOR,
) -> list[CompoundOpacity]:
    """Per-atom opacity from spatial recurrence across aligned compounds.

    Same-element atoms within cluster_radius merge into one site; the
    site's opacity is the fraction of compounds contributing to it,
    floored so rare decorations stay visible. Bonds take the fainter of
    their endpoints. Hydrogens sit out and render at the floor.
    """
    if len(graphs) != len(conformers):
        raise AlignError("graphs and conformers must pair up")
    if not graphs:
        return []
    if cluster_radius <= 0:
        raise AlignError("cluster radius must be positive")
    if not (0.0 < floor <= 1.0):
        raise AlignError("opacity floor must sit in (0, 1]")

    entries: list[tuple[int, int, str, np.ndarray]] = []
    for ci, (graph, conf) in enumerate(zip(graphs, conformers)):
        conf.validate_for(graph)
        for ai, atom in enumerate(graph.atoms):
            if atom.element == "H":
                continue
            entries.append((ci, ai, atom.element, conf.positions[ai]))

    uf = _UnionFind(len(entries))
    r2 = cluster_radius * cluster_radius
    for a in range(len(entries)):
        ca, _, ea, pa = entries[a]
        for b in range(a + 1, len(entries)):
            cb, _, eb, pb = entries[b]
            if ea != eb:
                continue
            delta = pa - pb
            if float(delta @ delta) <= r2:
                uf.union(a, b)

    members: dict[int, set[int]] = {}
    for idx, (ci, _, _, _) in enumerate(entries):
        members.setdefault(uf.find(idx), set()).add(ci)

    n_compounds = len(graphs)
    out = []
    lookup = {(ci, ai): idx for idx, (ci, ai, _, _) in enumerate(entries)}
    for ci, (graph, conf) in enumerate(zip(graphs, conformers)):
        n = len(graph.atoms)
        occurrence = np.ones(n, dtype=np.int64)
        for ai in range(n):
            idx = lookup.get((ci, ai))
            if idx is not None:
                occurrence[ai] = len(members[uf.find(idx)])
        atom_opacity = np.maximum(floor, occurrence / n_compounds)
        for ai, atom in enumerate(graph.atoms):
            if atom.element == "H":
                atom_opacity[ai] = floor
        bond_opacity = np.array(
            [min(atom_opacity[b.a], atom_opacity[b.b]) for b in graph.bonds],
            dtype=np.float64,
        )
        out.append(
            CompoundOpacity(
                compound_id=conf.compound_id,
                occurrence=occurrence,
                atom_opacity=atom_opacity,
                bond_opacity=bond_opacity,
            )
        )
    return out


def invert_opacity(
    values: np.ndarray, floor: float = OCCURRENCE_FLOOR
) -> np.ndarray:
    """Flip the emphasis: common turns faint, unique turns solid.

    Reflects each value about the midpoint of [floor, 1], which makes
    the operation its own inverse on that interval.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size and (values.min() < floor - 1e-12 or values.max() > 1.0 + 1e-12):
        raise AlignError("opacities must lie within [floor, 1]")
    return (1.0 + floor) - values


@dataclass(frozen=True)
class CompoundAlignment:
    compound_id: str
    rotation: np.ndarray
    translation: np.ndarray
    rmsd: float
    positions: np.ndarray  # full conformer in the reference frame
    occurrence: np.ndarray
    atom_opacity: np.ndarray
    bond_opacity: np.ndarray


@dataclass(frozen=True)
class AlignmentResult:
    reference_id: str
    mcs: MCSResult
    compounds: tuple[CompoundAlignment, ...]

    def compound_for(self, compound_id: str) -> CompoundAlignment:
        for comp in self.compounds:
            if comp.compound_id == compound_id:
                return comp
        raise AlignError(f"no alignment for compound {compound_id!r}")


def align_compounds(
    graphs: list[MolecularGraph],
    conformers: list[Conformer3D],
    time_budget: float = DEFAULT_TIME_BUDGET,
    cluster_radius: float = DEFAULT_CLUSTER_RADIUS,
) -> AlignmentResult:
    """Superpose an ensemble on its shared substructure.

    The first compound anchors the frame and keeps an identity
    transform; every other compound is rotated onto it through the MCS
    atom correspondence. RMSD is measured over MCS atoms only.
    """
    if len(graphs) != len(conformers):
        raise AlignError("graphs and conformers must pair up")
    if len(graphs) < 2:
        raise AlignError("alignment needs at least two compounds")
    ids = [c.compound_id for c in conformers]
    if len(set(ids)) != len(ids):
        raise AlignError("compound ids must be distinct")
    for graph, conf in zip(graphs, conformers):
        conf.validate_for(graph)

    mcs = find_mcs(graphs, time_budget=time_budget)
    n_template = len(mcs.template.atoms)
    if n_template < 3:
        raise AlignError(
            f"common substructure has {n_template} atoms; "
            "alignment needs at least three"
        )

    ref_conf = conformers[0]
    ref_points = ref_conf.positions[mcs.atoms_for(0)]

    aligned_confs: list[Conformer3D] = []
    transforms: list[tuple[np.ndarray, np.ndarray, float]] = []
    for k in range(len(graphs)):
        if k == 0:
            rotation = np.eye(3)
            translation = np.zeros(3)
            rmsd = 0.0
            positions = ref_conf.positions.copy()
        else:
            res = kabsch_align(
                ref_points, conformers[k].positions[mcs.atoms_for(k)]
            )
            rotation, translation, rmsd = res.rotation, res.translation, res.rmsd
            positions = res.apply(conformers[k].positions)
        transforms.append((rotation, translation, rmsd))
        aligned_confs.append(
            Conformer3D(
                compound_id=ids[k],
                positions=positions,
                includes_hydrogens=conformers[k].includes_hydrogens,
            )
        )

    shading = occurrence_opacity(graphs, aligned_confs, cluster_radius=cluster_radius)
    compounds = tuple(
        CompoundAlignment(
            compound_id=ids[k],
            rotation=transforms[k][0],
            translation=transforms[k][1],
            rmsd=transforms[k][2],
            positions=aligned_confs[k].positions,
            occurrence=shading[k].occurrence,
            atom_opacity=shading[k].atom_opacity,
            bond_opacity=shading[k].bond_opacity,
        )
        for k in range(len(graphs))
    )
    return AlignmentResult(reference_id=ids[0], mcs=mcs, compounds=compounds)
