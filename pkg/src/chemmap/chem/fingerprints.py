"""Binary structural fingerprints: circular (ECFP-style) and bond-path.

Substructure identifiers are 64-bit FNV-1a hashes over canonical byte
encodings, folded into the bit vector by modulo. Both fingerprints are
invariant to atom numbering, so any respelling of the same molecule
yields the same bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import BOND_ORDER_CODE, MolecularGraph

DEFAULT_N_BITS = 1024

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


@dataclass
class BitFingerprint:
    """Fixed-length binary fingerprint."""

    kind: str
    bits: np.ndarray  # bool array of length n_bits

    def __post_init__(self) -> None:
        self.bits = np.asarray(self.bits, dtype=bool)
        if self.bits.ndim != 1:
            raise ValueError("fingerprint bits must be one-dimensional")

    @property
    def n_bits(self) -> int:
        return int(self.bits.shape[0])

    def count(self) -> int:
        return int(self.bits.sum())

    def on_bits(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.bits)]


def tanimoto(fp_a: BitFingerprint, fp_b: BitFingerprint) -> float:
    """Tanimoto similarity |A∩B| / |A∪B|; 0.0 when both are empty."""
    if fp_a.n_bits != fp_b.n_bits:
        raise ValueError(
            f"fingerprint widths differ: {fp_a.n_bits} vs {fp_b.n_bits}"
        )
    union = int(np.logical_or(fp_a.bits, fp_b.bits).sum())
    if union == 0:
        return 0.0
    inter = int(np.logical_and(fp_a.bits, fp_b.bits).sum())
    return inter / union


def initial_atom_invariant(graph: MolecularGraph, idx: int) -> int:
    """Seed identifier from (element, degree, charge, hydrogens, ring flag)."""
    atom = graph.atoms[idx]
    payload = "|".join(
        (
            atom.element,
            str(graph.degree(idx)),
            str(atom.charge),
            str(atom.hydrogens),
            "1" if graph.atom_in_ring(idx) else "0",
        )
    ).encode()
    return fnv1a_64(payload)


def circular_identifiers(
    graph: MolecularGraph, radius: int = 2
) -> list[tuple[int, int, int]]:
    """All surviving (radius, root atom, identifier) triples.

    Each iteration hashes the previous identifier with the sorted list of
    (bond code, neighbor identifier) pairs. Identifiers whose environment
    (the atom set within the radius) duplicates one seen at a smaller
    radius are dropped; among same-radius duplicates the smallest
    identifier survives, which keeps the result independent of atom
    numbering.
    """
    if len(graph) == 0:
        raise ValueError("cannot fingerprint an empty graph")
    ids = [initial_atom_invariant(graph, a) for a in range(len(graph))]
    envs = [frozenset({a}) for a in range(len(graph))]

    # environment atom set -> (radius, identifier, root atom)
    features: dict[frozenset[int], tuple[int, int, int]] = {}
    for a in range(len(graph)):
        features[envs[a]] = (0, ids[a], a)

    for r in range(1, radius + 1):
        next_ids: list[int] = []
        next_envs: list[frozenset[int]] = []
        for a in range(len(graph)):
            pairs = sorted(
                (BOND_ORDER_CODE[graph.bonds[bi].order], ids[nbr])
                for nbr, bi in graph.neighbors(a)
            )
            payload = ids[a].to_bytes(8, "big") + b"".join(
                code.to_bytes(1, "big") + nid.to_bytes(8, "big")
                for code, nid in pairs
            )
            next_ids.append(fnv1a_64(payload))
            grown = set(envs[a])
            for nbr, _ in graph.neighbors(a):
                grown |= envs[nbr]
            next_envs.append(frozenset(grown))
        ids = next_ids
        envs = next_envs
        for a in range(len(graph)):
            key = envs[a]
            candidate = (r, ids[a], a)
            existing = features.get(key)
            if existing is None:
                features[key] = candidate
            elif existing[0] == r and candidate[1] < existing[1]:
                features[key] = candidate
            # a smaller-radius occupant always wins

    return sorted((rad, root, ident) for rad, ident, root in features.values())


def compute_ecfp(
    graph: MolecularGraph, radius: int = 2, n_bits: int = DEFAULT_N_BITS
) -> BitFingerprint:
    """Circular fingerprint of the given radius folded to n_bits."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if n_bits <= 0:
        raise ValueError("n_bits must be positive")
    bits = np.zeros(n_bits, dtype=bool)
    for _, _, ident in circular_identifiers(graph, radius):
        bits[ident % n_bits] = True
    return BitFingerprint(kind="ecfp", bits=bits)


def path_strings(graph: MolecularGraph, max_length: int = 7) -> set[str]:
    """Canonical encodings of all simple bond paths of 1..max_length bonds.

    A path is encoded as alternating element symbols (lowercase when
    aromatic) and bond order codes; the lexicographically smaller of the
    two traversal directions is kept.
    """
    if len(graph) == 0:
        raise ValueError("cannot fingerprint an empty graph")

    def symbol(idx: int) -> str:
        atom = graph.atoms[idx]
        return atom.element.lower() if atom.aromatic else atom.element

    found: set[str] = set()

    def walk(path: list[int], tokens: list[str], visited: set[int]) -> None:
        if len(path) > 1:
            forward = "|".join(tokens)
            backward = "|".join(tokens[::-1])
            found.add(min(forward, backward))
        if len(path) > max_length:
            return
        tip = path[-1]
        for nbr, bi in graph.neighbors(tip):
            if nbr in visited:
                continue
            bond_code = str(BOND_ORDER_CODE[graph.bonds[bi].order])
            path.append(nbr)
            tokens.extend((bond_code, symbol(nbr)))
            visited.add(nbr)
            walk(path, tokens, visited)
            visited.remove(nbr)
            tokens.pop()
            tokens.pop()
            path.pop()

    for start in range(len(graph)):
        walk([start], [symbol(start)], {start})
    return found


def compute_path_fingerprint(
    graph: MolecularGraph, max_length: int = 7, n_bits: int = DEFAULT_N_BITS
) -> BitFingerprint:
    """Bond-path fingerprint folded to n_bits.

    A graph with no bonds has no paths; to keep every non-empty molecule
    representable, the lone atom symbols are hashed instead.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    if n_bits <= 0:
        raise ValueError("n_bits must be positive")
    encodings = path_strings(graph, max_length)
    if not encodings:
        encodings = {
            atom.element.lower() if atom.aromatic else atom.element
            for atom in graph.atoms
        }
    bits = np.zeros(n_bits, dtype=bool)
    for encoded in encodings:
        bits[fnv1a_64(encoded.encode()) % n_bits] = True
    return BitFingerprint(kind="path", bits=bits)
