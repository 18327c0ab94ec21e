"""Maximum common substructure over a set of molecular graphs.

Pairwise MCS is a maximum clique search on the modular product of the
two graphs, restricted to cliques connected through shared bonds so the
common substructure is a single connected fragment. Multi-graph MCS
folds the pairwise step left over the inputs, smallest graph first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..chem.graph import Atom, Bond, MolecularGraph
from .conformer import AlignError

DEFAULT_TIME_BUDGET = 2.0  # seconds per pairwise step


@dataclass(frozen=True)
class MCSResult:
    """Common substructure template plus its embedding into every input.

    mappings[k] sends template atom index -> atom index in graphs[k],
    index-aligned with the find_mcs input order. exact is False when a
    pairwise search hit its time budget and returned best-so-far.
    rings_split flags templates that cut through a perceived ring of
    any input, since partial rings overlay poorly.
    """

    template: MolecularGraph
    mappings: tuple[dict[int, int], ...]
    exact: bool = True
    rings_split: bool = False

    @property
    def empty(self) -> bool:
        return len(self.template.atoms) == 0

    def atoms_for(self, k: int) -> list[int]:
        """Input-graph atom indices covered by the template, template order."""
        mapping = self.mappings[k]
        return [mapping[t] for t in range(len(self.template.atoms))]


def _bond_pairs(graph: MolecularGraph) -> set[tuple[int, int]]:
    pairs = set()
    for bond in graph.bonds:
        pairs.add((bond.a, bond.b))
        pairs.add((bond.b, bond.a))
    return pairs


def _pairwise_mcs(
    g1: MolecularGraph, g2: MolecularGraph, time_budget: float
) -> tuple[dict[int, int], bool]:
    """Largest connected common subgraph as a g1->g2 atom mapping.

    Atoms pair up iff elements match; bonds are compared by presence
    only, so order mismatches (single vs aromatic) still align.
    Hydrogens never enter the product graph.
    """
    heavy1 = [i for i, a in enumerate(g1.atoms) if a.element != "H"]
    heavy2 = [j for j, a in enumerate(g2.atoms) if a.element != "H"]
    verts = [
        (i, j)
        for i in heavy1
        for j in heavy2
        if g1.atoms[i].element == g2.atoms[j].element
    ]
    if not verts:
        return {}, True

    b1 = _bond_pairs(g1)
    b2 = _bond_pairs(g2)
    nv = len(verts)
    compat_sets: list[set[int]] = [set() for _ in range(nv)]
    strong_sets: list[set[int]] = [set() for _ in range(nv)]
    for u in range(nv):
        iu, ju = verts[u]
        for v in range(u + 1, nv):
            iv, jv = verts[v]
            if iu == iv or ju == jv:
                continue
            e1 = (iu, iv) in b1
            if e1 != ((ju, jv) in b2):
                continue
            compat_sets[u].add(v)
            compat_sets[v].add(u)
            if e1:
                strong_sets[u].add(v)
                strong_sets[v].add(u)

    # branch high-connectivity vertices first so the greedy descent
    # lands near the optimum and the bound bites early
    order = sorted(range(nv), key=lambda u: (-len(strong_sets[u]), u))
    pos = {u: p for p, u in enumerate(order)}
    verts = [verts[u] for u in order]
    compat = [0] * nv
    strong = [0] * nv
    for u in range(nv):
        for v in compat_sets[u]:
            compat[pos[u]] |= 1 << pos[v]
        for v in strong_sets[u]:
            strong[pos[u]] |= 1 << pos[v]

    n1h = len(heavy1)
    n2h = len(heavy2)
    deadline = time.monotonic() + time_budget
    best_mask = 0
    best_size = 0
    timed_out = False

    def extend(cmask: int, size: int, cand_conn: int, cand_all: int) -> None:
        nonlocal best_mask, best_size, timed_out
        if timed_out:
            return
        if size > best_size:
            best_mask, best_size = cmask, size
        if time.monotonic() > deadline:
            timed_out = True
            return
        conn = cand_conn
        while conn:
            # any extension uses distinct atoms on both sides, so the
            # reachable size is capped by the smaller remaining pool
            room = min(cand_all.bit_count(), n1h - size, n2h - size)
            if size + room <= best_size:
                return
            lsb = conn & -conn
            v = lsb.bit_length() - 1
            nxt_all = cand_all & compat[v]
            extend(cmask | lsb, size + 1, (cand_conn | strong[v]) & nxt_all, nxt_all)
            if timed_out:
                return
            conn &= ~lsb
            cand_all &= ~lsb
            cand_conn &= ~lsb

    processed = 0
    for v in range(nv):
        if timed_out or best_size >= min(n1h, n2h):
            break
        bit = 1 << v
        cand_all = compat[v] & ~processed & ~bit
        extend(bit, 1, strong[v] & cand_all, cand_all)
        processed |= bit

    mapping: dict[int, int] = {}
    mask = best_mask
    while mask:
        lsb = mask & -mask
        i, j = verts[lsb.bit_length() - 1]
        mapping[i] = j
        mask &= ~lsb
    return mapping, not timed_out


def _induced_template(graph: MolecularGraph, kept: list[int]) -> MolecularGraph:
    """Template subgraph on kept atoms: bare elements, g's bond orders."""
    remap = {old: new for new, old in enumerate(kept)}
    atoms = tuple(Atom(element=graph.atoms[i].element) for i in kept)
    bonds = tuple(
        Bond(remap[b.a], remap[b.b], b.order)
        for b in graph.bonds
        if b.a in remap and b.b in remap
    )
    return MolecularGraph(atoms, bonds)


def _rings_split(
    template: MolecularGraph,
    graphs: tuple[MolecularGraph, ...],
    mappings: tuple[dict[int, int], ...],
) -> bool:
    for graph, mapping in zip(graphs, mappings):
        inverse = {g_idx: t_idx for t_idx, g_idx in mapping.items()}
        for ring in graph.rings:
            present = 0
            for i, a in enumerate(ring):
                b = ring[(i + 1) % len(ring)]
                if (
                    a in inverse
                    and b in inverse
                    and template.bond_between(inverse[a], inverse[b]) is not None
                ):
                    present += 1
            if 0 < present < len(ring):
                return True
    return False


def find_mcs(
    graphs: list[MolecularGraph] | tuple[MolecularGraph, ...],
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> MCSResult:
    """Connected MCS shared by every input graph.

    The fold runs smallest graph first so the working template shrinks
    as early as possible. time_budget bounds each pairwise search; on
    expiry the best clique found so far is used and exact goes False.
    """
    graphs = tuple(graphs)
    if len(graphs) < 2:
        raise AlignError("MCS needs at least two graphs")
    for k, g in enumerate(graphs):
        if len(g.atoms) == 0:
            raise AlignError(f"graph {k} is empty")
    if time_budget <= 0:
        raise AlignError("time budget must be positive")

    order = sorted(range(len(graphs)), key=lambda k: (len(graphs[k].atoms), k))
    first = graphs[order[0]]
    heavy0 = [i for i, a in enumerate(first.atoms) if a.element != "H"]
    template = _induced_template(first, heavy0)
    map_to: dict[int, dict[int, int]] = {
        order[0]: {t: heavy0[t] for t in range(len(heavy0))}
    }
    exact = True

    for k in order[1:]:
        mapping, step_exact = _pairwise_mcs(template, graphs[k], time_budget)
        exact = exact and step_exact
        if not mapping:
            template = MolecularGraph((), ())
            map_to = {k2: {} for k2 in range(len(graphs))}
            break
        kept = sorted(mapping)
        remap = {old: new for new, old in enumerate(kept)}
        template = _induced_template(template, kept)
        for k2 in map_to:
            map_to[k2] = {remap[t]: map_to[k2][t] for t in kept}
        map_to[k] = {remap[t]: mapping[t] for t in kept}

    mappings = tuple(map_to.get(k, {}) for k in range(len(graphs)))
    return MCSResult(
        template=template,
        mappings=mappings,
        exact=exact,
        rings_split=_rings_split(template, graphs, mappings),
    )
