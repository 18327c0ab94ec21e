"""Shared fixture builders: synthetic compound tables and manifests."""

import csv
import json
from pathlib import Path

DRUGLIKE_SMILES = [
    "CC(=O)Oc1ccccc1C(=O)O",
    "CCN(CC)CCNC(=O)c1ccc(N)cc1",
    "CN1CCC(CC1)Oc1ccc(Cl)cc1",
    "COc1ccc2cc(CCN)c(=O)oc2c1",
    "CC(N)Cc1ccccc1",
    "NC(=O)c1ccc(O)cc1O",
    "CCOC(=O)N1CCN(CC1)C(C)=O",
    "OCC1OC(O)C(O)C(O)C1O",
    "Clc1ccc(cc1)C(c1ccccc1)N1CCN(CCO)CC1",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "NS(=O)(=O)c1cc2c(cc1Cl)NCNS2(=O)=O",
    "CN(C)CCCN1c2ccccc2CCc2ccc(Cl)cc21",
    "COc1cc2c(cc1OC)C(=O)C(CC1CCN(CC1)Cc1ccccc1)C2",
    "Fc1ccc(cc1)C(=O)CCCN1CCC(O)(CC1)c1ccc(Cl)cc1",
    "CC(=O)Nc1ccc(O)cc1",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "OC(=O)c1ccccc1Nc1cccc(c1)C(F)(F)F",
    "CCC(C)C1(CC)C(=O)NC(=O)NC1=O",
    "CN1C2CCC1CC(C2)OC(=O)C(CO)c1ccccc1",
    "CC12CCC3c4ccc(O)cc4CCC3C1CCC2O",
]


def write_manifest(directory: Path, manifest: dict, rows: list[dict]) -> Path:
    """Write a compound CSV plus manifest JSON, return the manifest path."""
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / "compounds.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    manifest = {"compounds": "compounds.csv", **manifest}
    manifest_path = directory / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    return manifest_path


def small_rows(n: int = 5) -> list[dict]:
    ic50 = ["5", "10", "250", "1500", ""]
    series = ["lead", "lead", "backup", "", "backup"]
    return [
        {
            "id": f"cmp-{k}",
            "smiles": DRUGLIKE_SMILES[k],
            "ic50_nm": ic50[k % 5],
            "series": series[k % 5],
            "assay_batch": str(1 + k % 3),
        }
        for k in range(n)
    ]


def write_small_manifest(directory: Path, **overrides) -> Path:
    manifest = {
        "name": "smoke",
        "activity_columns": {"T1": "ic50_nm"},
        **overrides,
    }
    return write_manifest(directory, manifest, small_rows())


SCAFFOLD_ROWS = [
    {"id": "s-01", "smiles": "c1ccccc1CCO", "ic50_nm": "5", "logp": "1.4", "pki": "7.2"},
    {"id": "s-02", "smiles": "c1ccccc1CCN", "ic50_nm": "50", "logp": "1.1", "pki": "6.1"},
    {"id": "s-03", "smiles": "c1ccccc1CCC", "ic50_nm": "2000", "logp": "3.7", "pki": "5.4"},
    {"id": "s-04", "smiles": "CC(=O)Oc1ccccc1C(=O)O", "ic50_nm": "", "logp": "1.2", "pki": "8.0"},
    {"id": "s-05", "smiles": "CCCCCCCCO", "ic50_nm": "100", "logp": "2.9", "pki": "4.9"},
    {"id": "s-06", "smiles": "c1ccccc1CCCO", "ic50_nm": "800", "logp": "2.1", "pki": ""},
    {"id": "s-07", "smiles": "CC(N)Cc1ccccc1", "ic50_nm": "20", "logp": "1.8", "pki": ""},
    {"id": "s-08", "smiles": "CC(=O)Nc1ccc(O)cc1", "ic50_nm": "9000", "logp": "0.5", "pki": ""},
    {"id": "s-09", "smiles": "Cn1cnc2c1c(=O)n(C)c(=O)n2C", "ic50_nm": "", "logp": "-0.1", "pki": ""},
    {"id": "s-10", "smiles": "OCC1OC(O)C(O)C(O)C1O", "ic50_nm": "30000", "logp": "-2.6", "pki": ""},
]

CONFORMER_IDS = ("s-01", "s-02", "s-03")  # share the c1ccccc1CC scaffold


def write_scaffold_manifest(directory: Path) -> Path:
    """Five compounds on a phenethyl scaffold, three with 3D conformers."""
    import numpy as np

    from chemmap.align import Conformer3D, graph_to_record, write_sdf
    from chemmap.chem import parse_smiles

    rng = np.random.default_rng(7)
    records = []
    for row in SCAFFOLD_ROWS:
        if row["id"] not in CONFORMER_IDS:
            continue
        graph = parse_smiles(row["smiles"])
        positions = rng.normal(scale=2.0, size=(len(graph.atoms), 3))
        records.append(
            graph_to_record(row["id"], graph, Conformer3D(row["id"], positions))
        )
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "conformers.sdf").write_text(write_sdf(records), encoding="utf-8")
    manifest = {
        "name": "scaffold",
        "activity_columns": {"T1": "ic50_nm"},
        "conformers": "conformers.sdf",
    }
    return write_manifest(directory, manifest, SCAFFOLD_ROWS)


DESIGNED_SMILES = [
    "Fc1ccc(cc1)c2cncc(CNCC3CCc4ccccc4C3)c2",
    "Fc1ccc(cc1)c2cncc(CNCC3CCc4cc(C)c(C)cc4C3)c2",
    "N(Cc1cncc(c1)c2cc(F)ccc2F)CC3CCC4=C(C=CC=C4)O3",
    "N(Cc1cncc(c1)c2ccc(F)cc2)C(N(C)C)C3CCC4=C(C=CC=C4)O3",
    "Fc1ccc(cc1)c2cncc(c2)C(N)CCC3CCc4ccccc4O3",
]


def _serotonin_smiles() -> list[str]:
    """118 clustered structures: five designed leads plus five families."""
    out = list(DESIGNED_SMILES)
    # A: ring-substituted phenethylamines (30)
    for halo in ("", "F", "Cl", "O", "C"):
        for tail in ("N", "NC", "NCC", "CN", "O", "NCCO"):
            out.append(f"{halo}c1ccc(CC{tail})cc1")
    # B: indane and tetralin amines (20)
    for core in (
        "C1Cc2ccccc2C1",
        "C1CCc2ccccc2C1",
        "C1Cc2ccc(F)cc2C1",
        "C1CCc2ccc(O)cc2C1",
    ):
        for tail in ("CN", "CNC", "CCN", "N", "CO"):
            out.append(core + tail)
    # C: aryl-pyridine biaryls, same chemotype as the designed leads (24)
    for halo in ("", "F", "Cl", "O"):
        for tail in ("CN", "CNC", "CNCC", "CCN", "C", "CCO"):
            out.append(f"{halo}c1ccc(cc1)c2cccnc2{tail}")
    # D: benzamides (20)
    for amine in ("N", "NC", "NCC", "NCCC"):
        for halo in ("", "F", "Cl", "O", "C"):
            ring = f"c1ccc({halo})cc1" if halo else "c1ccccc1"
            out.append(f"{amine}C(=O){ring}")
    # E: dihydrobenzofuran and chroman ethers (19)
    cores = ("C1Cc2ccccc2O1", "C1COc2ccccc21", "C1CCc2ccccc2O1")
    tails = ("CN", "CNC", "CCN", "N", "CO", "C", "CC")
    for i in range(19):
        out.append(tails[i % 7] + cores[i % 3])
    return out


def serotonin_rows() -> list[dict]:
    """Compound table for the 118-compound two-target fixture.

    Activity patterns follow the family structure: phenethylamines hit
    dopamine, the biaryl chemotype hits serotonin, benzamides are cold,
    designed leads are unmeasured. logp grows with molecule size so the
    table filters have values on both sides of common thresholds.
    """
    from chemmap.chem import parse_smiles

    rows = []
    for i, smiles in enumerate(_serotonin_smiles()):
        heavy = len(parse_smiles(smiles).atoms)
        if i < 5:
            ser, dop = "", ""  # designed, not yet assayed
        elif i < 35:
            ser, dop = str(40.0 + 30.0 * (i % 28)), str(1.0 + (i % 8))
        elif i < 55:
            ser, dop = str(200.0 + 40.0 * (i % 19)), str(150.0 + 50.0 * (i % 17))
        elif i < 79:
            ser, dop = str(2.0 + (i % 7)), str(900.0 + 110.0 * (i % 13))
        elif i < 99:
            ser, dop = str(1001.0 + 210.0 * (i % 11)), str(1100.0 + 130.0 * (i % 23))
        else:
            ser, dop = ("" if i % 5 == 0 else str(15.0 + 60.0 * (i % 14))), str(
                8.0 + 2.0 * (i % 4)
            )
        rows.append(
            {
                "id": f"sd-{i + 1:03d}",
                "smiles": smiles,
                "ic50_serotonin_nm": ser,
                "ic50_dopamine_nm": dop,
                "logp": str(round(-2.0 + 0.35 * heavy + 0.3 * (i % 7), 2)),
            }
        )
    return rows


def write_serotonin_manifest(directory: Path) -> Path:
    """The 118-compound fixture with a conformer for every entry."""
    import numpy as np

    from chemmap.align import Conformer3D, graph_to_record, write_sdf
    from chemmap.chem import parse_smiles

    rows = serotonin_rows()
    records = []
    for i, row in enumerate(rows):
        graph = parse_smiles(row["smiles"])
        rng = np.random.default_rng(1000 + i)
        positions = rng.normal(scale=2.5, size=(len(graph.atoms), 3))
        records.append(
            graph_to_record(row["id"], graph, Conformer3D(row["id"], positions))
        )
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "conformers.sdf").write_text(write_sdf(records), encoding="utf-8")
    manifest = {
        "name": "serotonin-dopamine",
        "activity_columns": {
            "serotonin": "ic50_serotonin_nm",
            "dopamine": "ic50_dopamine_nm",
        },
        "conformers": "conformers.sdf",
    }
    return write_manifest(directory, manifest, rows)


PGP_COUNTS = (42, 178, 673)  # Active / Moderately Active / Inactive


def pgp_rows() -> list[dict]:
    """893 compounds whose IC50 values hit the reference class counts."""
    rows = []
    k = 0
    for count, ic50_for in (
        (PGP_COUNTS[0], lambda j: 1.0 + (j % 9)),
        (PGP_COUNTS[1], lambda j: 10.0 + (j % 991)),
        (PGP_COUNTS[2], lambda j: 1001.0 + 17.0 * j),
    ):
        for j in range(count):
            rows.append(
                {
                    "id": f"pgp-{k:04d}",
                    "smiles": DRUGLIKE_SMILES[k % len(DRUGLIKE_SMILES)],
                    "ic50_nm": str(ic50_for(j)),
                }
            )
            k += 1
    return rows


def write_pgp_manifest(directory: Path) -> Path:
    manifest = {
        "name": "pgp-fixture",
        "activity_columns": {"P-gp": "ic50_nm"},
        "compute": False,
    }
    return write_manifest(directory, manifest, pgp_rows())
