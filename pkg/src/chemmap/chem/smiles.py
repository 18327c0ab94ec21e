"""SMILES parser producing heavy-atom molecular graphs.

Supported grammar: organic-subset atoms (upper and aromatic lowercase),
bracket atoms with isotope, charge, explicit hydrogen count and atom
class, bond symbols - = # : / \\, branches, ring closures (including
%nn), and dot-separated fragments. Stereo markers (/, \\, @, @@) are
accepted and discarded. Implicit hydrogens follow the default-valence
rule for organic-subset atoms; bracket atoms carry exactly the written
hydrogen count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elements import (
    AROMATIC_BRACKET,
    AROMATIC_ORGANIC,
    DEFAULT_VALENCES,
    KNOWN_ELEMENTS,
    ORGANIC_SUBSET,
)
from .graph import BOND_ORDER_VALUE, Atom, Bond, MolecularGraph


class SmilesParseError(ValueError):
    """Malformed SMILES; `position` is the zero-based character offset."""

    def __init__(self, message: str, smiles: str, position: int):
        super().__init__(f"{message} (position {position} in {smiles!r})")
        self.smiles = smiles
        self.position = position


BOND_SYMBOLS = {"-": "single", "=": "double", "#": "triple", ":": "aromatic",
                "/": "single", "\\": "single"}


@dataclass
class _PendingAtom:
    element: str
    aromatic: bool
    charge: int
    explicit_h: int | None  # None: derive from default valence
    position: int


def _parse_bracket(smiles: str, start: int) -> tuple[_PendingAtom, int]:
    """Parse a bracket atom starting at `start` (the '['). Returns the
    atom and the index just past the closing ']'."""
    i = start + 1
    n = len(smiles)

    def fail(msg: str, pos: int | None = None):
        raise SmilesParseError(msg, smiles, start if pos is None else pos)

    # isotope (parsed, discarded)
    while i < n and smiles[i].isdigit():
        i += 1

    if i >= n:
        fail("unclosed bracket atom")
    aromatic = False
    if smiles[i : i + 2] in AROMATIC_BRACKET:
        element = smiles[i : i + 2].capitalize()
        aromatic = True
        i += 2
    elif smiles[i] in AROMATIC_BRACKET:
        element = smiles[i].upper()
        aromatic = True
        i += 1
    elif smiles[i].isupper():
        element = smiles[i]
        i += 1
        if i < n and smiles[i].islower() and element + smiles[i] in KNOWN_ELEMENTS:
            element += smiles[i]
            i += 1
        if element not in KNOWN_ELEMENTS:
            fail(f"unknown element symbol {element!r}", i - len(element))
    else:
        fail(f"expected element symbol, found {smiles[i]!r}", i)

    # chirality (parsed, discarded)
    while i < n and smiles[i] == "@":
        i += 1

    hydrogens = 0
    if i < n and smiles[i] == "H":
        i += 1
        digits = ""
        while i < n and smiles[i].isdigit():
            digits += smiles[i]
            i += 1
        hydrogens = int(digits) if digits else 1

    charge = 0
    if i < n and smiles[i] in "+-":
        sign = 1 if smiles[i] == "+" else -1
        symbol = smiles[i]
        i += 1
        digits = ""
        while i < n and smiles[i].isdigit():
            digits += smiles[i]
            i += 1
        if digits:
            charge = sign * int(digits)
        else:
            charge = sign
            while i < n and smiles[i] == symbol:
                charge += sign
                i += 1

    if i < n and smiles[i] == ":":  # atom class (parsed, discarded)
        i += 1
        if i >= n or not smiles[i].isdigit():
            fail("atom class requires digits", i)
        while i < n and smiles[i].isdigit():
            i += 1

    if i >= n or smiles[i] != "]":
        fail("unclosed bracket atom")
    return _PendingAtom(element, aromatic, charge, hydrogens, start), i + 1


def _implicit_hydrogens(
    element: str, aromatic: bool, connections: int, bond_order_sum: float
) -> int:
    """Implicit hydrogen count for a bare (non-bracket) atom.

    Aliphatic atoms fill up to the smallest default valence covering the
    bond order sum. Aromatic heteroatoms written bare never carry
    hydrogens (pyrrole-type nitrogens must be spelled [nH]); an aromatic
    carbon carries one hydrogen only when it has exactly two neighbors.
    """
    if aromatic:
        if element == "C" and connections == 2:
            return 1
        return 0
    valences = DEFAULT_VALENCES.get(element)
    if valences is None:
        return 0
    needed = math.ceil(bond_order_sum - 1e-9)
    for valence in valences:
        if valence >= needed:
            return valence - needed
    return 0


def parse_smiles(smiles: str) -> MolecularGraph:
    """Parse a SMILES string into a heavy-atom graph with perceived rings.

    Raises SmilesParseError (with character offset) on malformed input:
    unknown elements, unbalanced parentheses or brackets, unmatched ring
    closures, dangling or conflicting bond symbols, empty input.
    """
    body = smiles.rstrip()
    if not body:
        raise SmilesParseError("empty SMILES", smiles, 0)
    offset = 0

    atoms: list[_PendingAtom] = []
    bonds: list[tuple[int, int, str | None, int]] = []  # a, b, symbol, position
    prev: int | None = None
    pending_bond: str | None = None
    pending_bond_pos = 0
    branch_stack: list[tuple[int, int]] = []  # (atom index, '(' position)
    ring_open: dict[int, tuple[int, str | None, int]] = {}

    def fail(msg: str, pos: int):
        raise SmilesParseError(msg, smiles, offset + pos)

    def add_atom(atom: _PendingAtom) -> None:
        nonlocal prev, pending_bond
        idx = len(atoms)
        atoms.append(atom)
        if prev is not None:
            bonds.append((prev, idx, pending_bond, atom.position))
        elif pending_bond is not None:
            fail("bond symbol with no preceding atom", pending_bond_pos)
        pending_bond = None
        prev = idx

    def close_ring(number: int, pos: int) -> None:
        nonlocal pending_bond
        if prev is None:
            fail("ring closure with no preceding atom", pos)
        if number in ring_open:
            other, open_symbol, open_pos = ring_open.pop(number)
            if other == prev:
                fail(f"ring closure {number} bonds an atom to itself", pos)
            symbol = pending_bond
            if symbol is not None and open_symbol is not None and symbol != open_symbol:
                fail(f"conflicting bond symbols for ring closure {number}", pos)
            bonds.append((other, prev, symbol or open_symbol, pos))
        else:
            ring_open[number] = (prev, pending_bond, pos)
        pending_bond = None

    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        if ch == "[":
            atom, nxt = _parse_bracket(body, i)
            atom = _PendingAtom(atom.element, atom.aromatic, atom.charge,
                                atom.explicit_h, i)
            add_atom(atom)
            i = nxt
        elif body[i : i + 2] in ("Cl", "Br"):
            add_atom(_PendingAtom(body[i : i + 2], False, 0, None, i))
            i += 2
        elif ch in ORGANIC_SUBSET:
            add_atom(_PendingAtom(ch, False, 0, None, i))
            i += 1
        elif ch in AROMATIC_ORGANIC:
            add_atom(_PendingAtom(ch.upper(), True, 0, None, i))
            i += 1
        elif ch in BOND_SYMBOLS:
            if pending_bond is not None:
                fail("duplicate bond symbol", i)
            if prev is None:
                fail("bond symbol with no preceding atom", i)
            pending_bond = BOND_SYMBOLS[ch]
            pending_bond_pos = i
            i += 1
        elif ch.isdigit():
            close_ring(int(ch), i)
            i += 1
        elif ch == "%":
            if i + 2 >= n or not body[i + 1 : i + 3].isdigit():
                fail("'%' ring closure requires two digits", i)
            close_ring(int(body[i + 1 : i + 3]), i)
            i += 3
        elif ch == "(":
            if prev is None:
                fail("branch with no preceding atom", i)
            if pending_bond is not None:
                fail("bond symbol before branch open", i)
            branch_stack.append((prev, i))
            i += 1
        elif ch == ")":
            if not branch_stack:
                fail("unbalanced ')'", i)
            if pending_bond is not None:
                fail("dangling bond symbol before ')'", pending_bond_pos)
            prev = branch_stack.pop()[0]
            i += 1
        elif ch == ".":
            if pending_bond is not None:
                fail("bond symbol before fragment separator", pending_bond_pos)
            if prev is None:
                fail("fragment separator with no preceding atom", i)
            prev = None
            i += 1
        else:
            fail(f"unexpected character {ch!r}", i)

    if branch_stack:
        fail("unbalanced '('", branch_stack[-1][1])
    if pending_bond is not None:
        fail("dangling bond symbol", pending_bond_pos)
    if ring_open:
        number = min(ring_open)
        fail(f"unmatched ring closure {number}", ring_open[number][2])
    if not atoms:
        raise SmilesParseError("no atoms in SMILES", smiles, offset)

    # resolve bond orders: default is aromatic between two aromatic atoms
    resolved: list[Bond] = []
    for a, b, symbol, pos in bonds:
        if symbol is None:
            order = "aromatic" if atoms[a].aromatic and atoms[b].aromatic else "single"
        else:
            order = symbol
        if order == "aromatic" and not (atoms[a].aromatic and atoms[b].aromatic):
            fail("aromatic bond between non-aromatic atoms", pos)
        resolved.append(Bond(a, b, order))

    seen: set[tuple[int, int]] = set()
    for bond, (_, _, _, pos) in zip(resolved, bonds):
        key = (min(bond.a, bond.b), max(bond.a, bond.b))
        if key in seen:
            fail(f"duplicate bond between atoms {key[0]} and {key[1]}", pos)
        seen.add(key)

    order_sums = [0.0] * len(atoms)
    connections = [0] * len(atoms)
    for bond in resolved:
        order_sums[bond.a] += BOND_ORDER_VALUE[bond.order]
        order_sums[bond.b] += BOND_ORDER_VALUE[bond.order]
        connections[bond.a] += 1
        connections[bond.b] += 1

    final_atoms = []
    for idx, pending in enumerate(atoms):
        if pending.explicit_h is None:
            hydrogens = _implicit_hydrogens(
                pending.element, pending.aromatic, connections[idx], order_sums[idx]
            )
        else:
            hydrogens = pending.explicit_h
        final_atoms.append(
            Atom(pending.element, pending.charge, pending.aromatic, hydrogens)
        )

    return MolecularGraph(tuple(final_atoms), tuple(resolved))
