"""Molecular graph model: atoms, bonds, and smallest-set-of-smallest-rings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


BOND_ORDER_VALUE = {"single": 1.0, "double": 2.0, "triple": 3.0, "aromatic": 1.5}

# Integer codes used when hashing bonds into fingerprints.
BOND_ORDER_CODE = {"single": 1, "double": 2, "triple": 3, "aromatic": 4}


@dataclass(frozen=True)
class Atom:
    """One heavy atom. `hydrogens` counts attached hydrogens (implicit or
    spelled out in a bracket); hydrogens are not graph nodes."""

    element: str
    charge: int = 0
    aromatic: bool = False
    hydrogens: int = 0


@dataclass(frozen=True)
class Bond:
    """Undirected bond between atom indices."""

    a: int
    b: int
    order: str = "single"

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class MolecularGraph:
    """Immutable-by-convention heavy-atom graph with perceived rings.

    Rings are the smallest set of smallest rings: a minimum cycle basis
    built greedily from shortest candidate cycles, which covers every
    bond that lies on a cycle.
    """

    atoms: tuple[Atom, ...]
    bonds: tuple[Bond, ...]
    rings: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        n = len(self.atoms)
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        seen_pairs: set[tuple[int, int]] = set()
        for bi, bond in enumerate(self.bonds):
            if bond.a == bond.b:
                raise ValueError(f"self-bond on atom {bond.a}")
            key = (min(bond.a, bond.b), max(bond.a, bond.b))
            if key in seen_pairs:
                raise ValueError(f"duplicate bond between atoms {key[0]} and {key[1]}")
            seen_pairs.add(key)
            adjacency[bond.a].append((bond.b, bi))
            adjacency[bond.b].append((bond.a, bi))
        self._adjacency = tuple(tuple(nbrs) for nbrs in adjacency)
        if not self.rings:
            object.__setattr__(self, "rings", tuple(perceive_rings(n, self.bonds)))
        ring_atoms: set[int] = set()
        ring_bonds: set[tuple[int, int]] = set()
        for ring in self.rings:
            ring_atoms.update(ring)
            for i, a in enumerate(ring):
                b = ring[(i + 1) % len(ring)]
                ring_bonds.add((min(a, b), max(a, b)))
        self._ring_atoms = frozenset(ring_atoms)
        self._ring_bonds = frozenset(ring_bonds)

    def __len__(self) -> int:
        return len(self.atoms)

    def neighbors(self, idx: int) -> tuple[tuple[int, int], ...]:
        """(neighbor atom index, bond index) pairs for one atom."""
        return self._adjacency[idx]

    def degree(self, idx: int) -> int:
        return len(self._adjacency[idx])

    def bond_between(self, a: int, b: int) -> Bond | None:
        for nbr, bi in self._adjacency[a]:
            if nbr == b:
                return self.bonds[bi]
        return None

    def atom_in_ring(self, idx: int) -> bool:
        return idx in self._ring_atoms

    def bond_in_ring(self, bond: Bond) -> bool:
        return (min(bond.a, bond.b), max(bond.a, bond.b)) in self._ring_bonds

    def fragment_count(self) -> int:
        return _component_count(len(self.atoms), self._adjacency)


def _component_count(n: int, adjacency) -> int:
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            for nbr, _ in adjacency[v]:
                if not seen[nbr]:
                    seen[nbr] = True
                    queue.append(nbr)
    return count


def _bfs_tree(root: int, adjacency) -> tuple[dict[int, int], dict[int, tuple[int, int]]]:
    dist = {root: 0}
    parent: dict[int, tuple[int, int]] = {}
    order = deque([root])
    while order:
        v = order.popleft()
        for nbr, bi in adjacency[v]:
            if nbr not in dist:
                dist[nbr] = dist[v] + 1
                parent[nbr] = (v, bi)
                order.append(nbr)
    return dist, parent


def perceive_rings(n_atoms: int, bonds: tuple[Bond, ...]) -> list[tuple[int, ...]]:
    """Smallest set of smallest rings via greedy minimum cycle basis.

    Candidate cycles come from shortest-path trees rooted at every atom
    (Horton's construction). The basis is filled smallest-first, keeping
    only cycles independent over GF(2) of the bond-index space, until it
    holds `bonds - atoms + components` rings.
    """
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n_atoms)]
    for bi, bond in enumerate(bonds):
        adjacency[bond.a].append((bond.b, bi))
        adjacency[bond.b].append((bond.a, bi))

    target = len(bonds) - n_atoms + _component_count(n_atoms, adjacency)
    if target <= 0:
        return []

    candidates: dict[frozenset[int], tuple[int, ...]] = {}
    for root in range(n_atoms):
        dist, parent = _bfs_tree(root, adjacency)

        def path_to_root(v: int) -> tuple[list[int], set[int]]:
            verts = [v]
            bond_ids = set()
            while verts[-1] != root:
                p, bi = parent[verts[-1]]
                bond_ids.add(bi)
                verts.append(p)
            return verts, bond_ids

        for bond_index, bond in enumerate(bonds):
            x, y = bond.a, bond.b
            if x not in dist or y not in dist:
                continue
            px, bx = path_to_root(x)
            py, by = path_to_root(y)
            if bond_index in bx or bond_index in by:
                continue  # tree edge
            if set(px) & set(py) != {root}:
                continue  # the two paths must meet only at the root
            cycle_bonds = frozenset(bx | by | {bond_index})
            if cycle_bonds not in candidates:
                # vertex order: root..x along one path, then y..back to root
                candidates[cycle_bonds] = tuple(px[::-1] + py[:-1])

    # xor-basis over bond-index bitmasks, keyed by leading bit
    pivots: dict[int, int] = {}

    def try_insert(mask: int) -> bool:
        while mask:
            high = mask.bit_length() - 1
            if high not in pivots:
                pivots[high] = mask
                return True
            mask ^= pivots[high]
        return False

    rings: list[tuple[int, ...]] = []
    for cycle_bonds, verts in sorted(
        candidates.items(), key=lambda item: (len(item[0]), item[1])
    ):
        mask = 0
        for bi in cycle_bonds:
            mask |= 1 << bi
        if try_insert(mask):
            rings.append(verts)
            if len(rings) == target:
                break

    if len(rings) != target:
        raise RuntimeError(
            f"ring perception found {len(rings)} of {target} independent cycles"
        )
    return rings
