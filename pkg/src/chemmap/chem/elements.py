"""Element data used by the SMILES parser and descriptor calculations."""

# Standard atomic weights (IUPAC 2021, conventional values).
ATOMIC_MASSES = {
    "H": 1.008, "He": 4.003,
    "Li": 6.94, "Be": 9.012, "B": 10.81, "C": 12.011, "N": 14.007,
    "O": 15.999, "F": 18.998, "Ne": 20.180,
    "Na": 22.990, "Mg": 24.305, "Al": 26.982, "Si": 28.085, "P": 30.974,
    "S": 32.06, "Cl": 35.45, "Ar": 39.95,
    "K": 39.098, "Ca": 40.078, "Ti": 47.867, "Cr": 51.996, "Mn": 54.938,
    "Fe": 55.845, "Co": 58.933, "Ni": 58.693, "Cu": 63.546, "Zn": 65.38,
    "Ga": 69.723, "Ge": 72.630, "As": 74.922, "Se": 78.971, "Br": 79.904,
    "Kr": 83.798,
    "Rb": 85.468, "Sr": 87.62, "Mo": 95.95, "Ru": 101.07, "Rh": 102.906,
    "Pd": 106.42, "Ag": 107.868, "Cd": 112.414, "In": 114.818,
    "Sn": 118.710, "Sb": 121.760, "Te": 127.60, "I": 126.904, "Xe": 131.293,
    "Cs": 132.905, "Ba": 137.327, "W": 183.84, "Pt": 195.084,
    "Au": 196.967, "Hg": 200.592, "Tl": 204.38, "Pb": 207.2, "Bi": 208.980,
}

# Elements the parser accepts inside bracket atoms.
KNOWN_ELEMENTS = frozenset(ATOMIC_MASSES)

# Organic subset: atoms that may appear bare (no brackets) in SMILES.
ORGANIC_SUBSET = frozenset({"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"})

# Aromatic organic-subset symbols (lowercase in SMILES).
AROMATIC_ORGANIC = frozenset({"b", "c", "n", "o", "p", "s"})

# Aromatic symbols allowed inside brackets.
AROMATIC_BRACKET = frozenset({"b", "c", "n", "o", "p", "s", "se", "as"})

# Default valence lists for implicit-hydrogen assignment, smallest first.
# An organic-subset atom gets enough implicit hydrogens to reach the
# smallest listed valence that covers its explicit bond order sum.
DEFAULT_VALENCES = {
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}
