"""3D conformer container shared across the alignment pipeline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..chem.graph import MolecularGraph


class AlignError(ValueError):
    pass


@dataclass
class Conformer3D:
    """Atom positions in Å, index-aligned with a compound's graph atoms.

    Positions cover heavy atoms only unless includes_hydrogens says
    otherwise; alignment always works on the heavy-atom frame.
    """

    compound_id: str
    positions: np.ndarray  # (n_atoms, 3)
    includes_hydrogens: bool = False

    def __post_init__(self) -> None:
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise AlignError("conformer positions must be an n×3 array")
        if self.positions.shape[0] < 1:
            raise AlignError("conformer needs at least one atom")
        if not np.isfinite(self.positions).all():
            raise AlignError(
                f"conformer {self.compound_id!r} has non-finite coordinates"
            )

    @property
    def n_atoms(self) -> int:
        return int(self.positions.shape[0])

    def validate_for(self, graph: MolecularGraph) -> None:
        if self.n_atoms != len(graph.atoms):
            raise AlignError(
                f"conformer {self.compound_id!r} has {self.n_atoms} positions "
                f"for a graph of {len(graph.atoms)} atoms"
            )
