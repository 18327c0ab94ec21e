"""Chemistry core: SMILES parsing, molecular graphs, fingerprints,
descriptors."""

from .descriptors import (
    COMPUTED_DESCRIPTOR_NAMES,
    DescriptorError,
    DescriptorVector,
    DrugLikenessRecord,
    Ro5Result,
    compute_descriptors,
    compute_ro5,
    drug_likeness,
    molecular_weight,
)
from .fingerprints import (
    BitFingerprint,
    compute_ecfp,
    compute_path_fingerprint,
    fnv1a_64,
    tanimoto,
)
from .graph import Atom, Bond, MolecularGraph, perceive_rings
from .smiles import SmilesParseError, parse_smiles

__all__ = [
    "Atom",
    "BitFingerprint",
    "Bond",
    "COMPUTED_DESCRIPTOR_NAMES",
    "DescriptorError",
    "DescriptorVector",
    "DrugLikenessRecord",
    "MolecularGraph",
    "Ro5Result",
    "SmilesParseError",
    "compute_descriptors",
    "compute_ecfp",
    "compute_path_fingerprint",
    "compute_ro5",
    "drug_likeness",
    "fnv1a_64",
    "molecular_weight",
    "parse_smiles",
    "perceive_rings",
    "tanimoto",
]
