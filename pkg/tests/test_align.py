"""Kabsch superposition, occurrence shading, ensemble alignment."""

import numpy as np
import pytest

from chemmap.align import (
    OCCURRENCE_FLOOR,
    AlignError,
    Conformer3D,
    align_compounds,
    invert_opacity,
    kabsch_align,
    occurrence_opacity,
)
from chemmap.chem import Atom, Bond, MolecularGraph


def rotation_about(axis, angle):
    """Rodrigues formula; independent of the implementation under test."""
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def random_cloud(rng, n):
    return rng.normal(0.0, 2.0, size=(n, 3))


def assert_proper_rotation(r, tol=1e-8):
    np.testing.assert_allclose(r @ r.T, np.eye(3), atol=tol)
    assert np.linalg.det(r) == pytest.approx(1.0, abs=tol)


class TestKabsch:
    def test_self_alignment_is_identity(self):
        rng = np.random.default_rng(0)
        pts = random_cloud(rng, 8)
        res = kabsch_align(pts, pts)
        assert res.rmsd < 1e-6
        assert_proper_rotation(res.rotation)
        np.testing.assert_allclose(res.rotation, np.eye(3), atol=1e-9)
        np.testing.assert_allclose(res.transformed, pts, atol=1e-9)

    def test_recovers_rigid_transform(self):
        rng = np.random.default_rng(1)
        for seed in range(10):
            rng = np.random.default_rng(seed)
            pts = random_cloud(rng, 12)
            r_true = rotation_about(rng.normal(size=3), rng.uniform(0.2, 3.0))
            t_true = rng.normal(0.0, 5.0, size=3)
            moved = pts @ r_true.T + t_true
            res = kabsch_align(pts, moved)
            assert res.rmsd < 1e-6
            assert_proper_rotation(res.rotation)
            np.testing.assert_allclose(res.transformed, pts, atol=1e-6)
            np.testing.assert_allclose(res.rotation, r_true.T, atol=1e-6)

    def test_noisy_recovery_rmsd_in_band(self):
        # 0.1 Å gaussian jitter should land the fit residual near it
        for seed in range(8):
            rng = np.random.default_rng(100 + seed)
            pts = random_cloud(rng, 15)
            r_true = rotation_about(rng.normal(size=3), 1.1)
            moved = pts @ r_true.T + rng.normal(0.0, 0.1, size=pts.shape) + 3.0
            res = kabsch_align(pts, moved)
            assert 0.05 <= res.rmsd <= 0.35, f"seed {seed}: {res.rmsd}"

    def test_reflection_is_never_chosen(self):
        rng = np.random.default_rng(3)
        pts = random_cloud(rng, 10)
        mirrored = pts * np.array([-1.0, 1.0, 1.0])
        res = kabsch_align(pts, mirrored)
        assert_proper_rotation(res.rotation)
        assert np.linalg.det(res.rotation) == pytest.approx(1.0, abs=1e-8)

    def test_explicit_correspondence(self):
        rng = np.random.default_rng(4)
        ref = random_cloud(rng, 6)
        r_true = rotation_about([0.0, 0.0, 1.0], 0.9)
        moving_core = ref[[5, 1, 3, 0]] @ r_true.T + 2.0
        extra = rng.normal(size=(2, 3))
        moving = np.vstack([moving_core, extra])
        res = kabsch_align(ref, moving, correspondence=[(5, 0), (1, 1), (3, 2), (0, 3)])
        assert res.rmsd < 1e-6
        np.testing.assert_allclose(res.transformed[:4], ref[[5, 1, 3, 0]], atol=1e-6)

    def test_apply_matches_transformed(self):
        rng = np.random.default_rng(5)
        pts = random_cloud(rng, 7)
        moved = pts @ rotation_about([1, 1, 0], 0.5).T + 1.5
        res = kabsch_align(pts, moved)
        np.testing.assert_allclose(res.apply(moved), res.transformed, atol=1e-12)

    def test_too_few_pairs(self):
        pts = np.zeros((2, 3))
        with pytest.raises(AlignError, match="three"):
            kabsch_align(pts, pts)

    def test_collinear_points_rejected(self):
        line = np.array([[0.0, 0, 0], [1.0, 0, 0], [2.0, 0, 0], [3.5, 0, 0]])
        with pytest.raises(AlignError, match="collinear"):
            kabsch_align(line, line)

    def test_mismatched_rows_without_correspondence(self):
        with pytest.raises(AlignError, match="equally many"):
            kabsch_align(np.zeros((4, 3)), np.zeros((5, 3)))

    def test_non_finite_rejected(self):
        pts = np.zeros((4, 3))
        bad = pts.copy()
        bad[1, 2] = np.inf
        with pytest.raises(AlignError, match="non-finite"):
            kabsch_align(pts, bad)


def chain_graph(elements, extra_bonds=()):
    bonds = [Bond(i, i + 1, "single") for i in range(len(elements) - 1)]
    bonds.extend(Bond(a, b, o) for a, b, o in extra_bonds)
    return MolecularGraph(tuple(Atom(e) for e in elements), tuple(bonds))


CORE = np.array(
    [
        [0.0, 0.0, 0.0],
        [1.5, 0.0, 0.0],
        [2.3, 1.3, 0.0],
        [3.8, 1.3, 0.5],
    ]
)


def decorated_pair():
    """Two compounds sharing a C-C-N-C core with different decorations."""
    g_a = chain_graph(["C", "C", "N", "C", "O"])
    pos_a = np.vstack([CORE, [[4.5, 2.0, 1.0]]])
    r = rotation_about([1.0, 2.0, 3.0], 0.7)
    t = np.array([5.0, -3.0, 2.0])
    g_b = chain_graph(["C", "C", "N", "C", "F"])
    pos_b = np.vstack([CORE, [[4.2, 2.2, -0.5]]]) @ r.T + t
    conf_a = Conformer3D("cmp-a", pos_a)
    conf_b = Conformer3D("cmp-b", pos_b)
    return g_a, g_b, conf_a, conf_b


class TestOccurrence:
    def test_shared_sites_count_distinct_compounds(self):
        g = chain_graph(["C", "C", "N"])
        pos = np.array([[0.0, 0, 0], [1.5, 0, 0], [2.5, 1, 0]])
        confs = [
            Conformer3D("a", pos),
            Conformer3D("b", pos + 0.01),
            Conformer3D("c", pos + np.array([10.0, 0, 0])),
        ]
        shading = occurrence_opacity([g, g, g], confs)
        np.testing.assert_array_equal(shading[0].occurrence, [2, 2, 2])
        np.testing.assert_array_equal(shading[2].occurrence, [1, 1, 1])
        np.testing.assert_allclose(shading[0].atom_opacity, 2 / 3)
        np.testing.assert_allclose(shading[2].atom_opacity, 1 / 3)

    def test_same_compound_duplicates_count_once(self):
        # two atoms of one compound in one site still mean occurrence 1
        g = MolecularGraph((Atom("C"), Atom("C")), (Bond(0, 1),))
        conf = Conformer3D("a", np.array([[0.0, 0, 0], [0.1, 0, 0]]))
        other = Conformer3D("b", np.array([[50.0, 0, 0], [51.5, 0, 0]]))
        shading = occurrence_opacity([g, g], [conf, other])
        np.testing.assert_array_equal(shading[0].occurrence, [1, 1])

    def test_elements_never_merge_across_species(self):
        g1 = MolecularGraph((Atom("C"),), ())
        g2 = MolecularGraph((Atom("N"),), ())
        confs = [Conformer3D("a", np.zeros((1, 3))), Conformer3D("b", np.zeros((1, 3)))]
        shading = occurrence_opacity([g1, g2], confs)
        assert shading[0].occurrence[0] == 1
        assert shading[1].occurrence[0] == 1

    def test_floor_applies_to_rare_atoms(self):
        graphs = [MolecularGraph((Atom("C"),), ()) for _ in range(30)]
        confs = [
            Conformer3D(f"m{k}", np.array([[5.0 * k, 0.0, 0.0]])) for k in range(30)
        ]
        shading = occurrence_opacity(graphs, confs)
        for s in shading:
            assert s.atom_opacity[0] == pytest.approx(OCCURRENCE_FLOOR)

    def test_bond_takes_fainter_endpoint(self):
        g = chain_graph(["C", "O"])
        shared = np.array([[0.0, 0, 0]])
        confs = [
            Conformer3D("a", np.vstack([shared, [[1.4, 0, 0]]])),
            Conformer3D("b", np.vstack([shared + 0.05, [[20.0, 0, 0]]])),
        ]
        shading = occurrence_opacity([g, g], confs)
        assert shading[0].atom_opacity[0] == pytest.approx(1.0)
        assert shading[0].atom_opacity[1] == pytest.approx(0.5)
        assert shading[0].bond_opacity[0] == pytest.approx(0.5)

    def test_transitive_chaining_merges_clusters(self):
        # 0.4 Å steps chain into one site even though ends sit 0.8 Å apart
        g = MolecularGraph((Atom("C"),), ())
        confs = [
            Conformer3D("a", np.array([[0.0, 0, 0]])),
            Conformer3D("b", np.array([[0.4, 0, 0]])),
            Conformer3D("c", np.array([[0.8, 0, 0]])),
        ]
        shading = occurrence_opacity([g, g, g], confs)
        for s in shading:
            assert s.occurrence[0] == 3

    def test_empty_input_gives_empty_output(self):
        assert occurrence_opacity([], []) == []

    def test_hydrogens_render_at_floor(self):
        g = MolecularGraph((Atom("C"), Atom("H")), (Bond(0, 1),))
        confs = [
            Conformer3D("a", np.array([[0.0, 0, 0], [1.0, 0, 0]]), includes_hydrogens=True),
            Conformer3D("b", np.array([[0.0, 0, 0], [1.0, 0, 0]]), includes_hydrogens=True),
        ]
        shading = occurrence_opacity([g, g], confs)
        assert shading[0].atom_opacity[0] == pytest.approx(1.0)
        assert shading[0].atom_opacity[1] == pytest.approx(OCCURRENCE_FLOOR)


class TestInversion:
    def test_involution_on_the_floor_to_one_band(self):
        values = np.array([OCCURRENCE_FLOOR, 0.3, 0.777, 1.0])
        flipped = invert_opacity(values)
        np.testing.assert_allclose(invert_opacity(flipped), values, atol=1e-12)

    def test_endpoints_swap(self):
        out = invert_opacity(np.array([OCCURRENCE_FLOOR, 1.0]))
        np.testing.assert_allclose(out, [1.0, OCCURRENCE_FLOOR], atol=1e-12)

    def test_out_of_band_rejected(self):
        with pytest.raises(AlignError, match="within"):
            invert_opacity(np.array([0.01]))


class TestAlignCompounds:
    def test_two_compound_recovery(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        result = align_compounds([g_a, g_b], [conf_a, conf_b])
        assert result.reference_id == "cmp-a"
        assert len(result.mcs.template.atoms) == 4
        ref = result.compound_for("cmp-a")
        np.testing.assert_allclose(ref.rotation, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(ref.translation, 0.0, atol=1e-12)
        assert ref.rmsd == 0.0
        moved = result.compound_for("cmp-b")
        assert moved.rmsd < 1e-6
        assert_proper_rotation(moved.rotation)
        # core atoms land on the reference core, decoration stays apart
        order_a = result.mcs.atoms_for(0)
        order_b = result.mcs.atoms_for(1)
        np.testing.assert_allclose(
            moved.positions[order_b], conf_a.positions[order_a], atol=1e-6
        )

    def test_occurrence_reflects_shared_core(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        result = align_compounds([g_a, g_b], [conf_a, conf_b])
        a = result.compound_for("cmp-a")
        np.testing.assert_allclose(a.atom_opacity[:4], 1.0)
        assert a.atom_opacity[4] == pytest.approx(0.5)
        assert a.bond_opacity[3] == pytest.approx(0.5)
        np.testing.assert_allclose(a.bond_opacity[:3], 1.0)

    def test_three_compounds_share_frame(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        g_c = chain_graph(["C", "C", "N", "C", "Cl"])
        r = rotation_about([0.3, -1.0, 0.2], 2.1)
        pos_c = np.vstack([CORE, [[4.0, 2.5, 0.3]]]) @ r.T - 7.0
        conf_c = Conformer3D("cmp-c", pos_c)
        result = align_compounds([g_a, g_b, g_c], [conf_a, conf_b, conf_c])
        assert len(result.mcs.template.atoms) == 4
        core_ref = conf_a.positions[result.mcs.atoms_for(0)]
        for k, cid in enumerate(["cmp-a", "cmp-b", "cmp-c"]):
            comp = result.compound_for(cid)
            np.testing.assert_allclose(
                comp.positions[result.mcs.atoms_for(k)], core_ref, atol=1e-6
            )
            np.testing.assert_allclose(comp.atom_opacity[:4], 1.0)
            assert comp.atom_opacity[4] == pytest.approx(
                max(OCCURRENCE_FLOOR, 1 / 3)
            )

    def test_rmsd_grows_with_core_jitter(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        rng = np.random.default_rng(11)
        noisy = conf_b.positions.copy()
        noisy[:4] += rng.normal(0.0, 0.1, size=(4, 3))
        result = align_compounds([g_a, g_b], [conf_a, Conformer3D("cmp-b", noisy)])
        assert 0.01 < result.compound_for("cmp-b").rmsd < 0.5

    def test_small_template_rejected(self):
        g1 = chain_graph(["C", "C"])
        g2 = chain_graph(["C", "C"])
        c1 = Conformer3D("a", np.array([[0.0, 0, 0], [1.5, 0, 0]]))
        c2 = Conformer3D("b", np.array([[0.0, 0, 0], [1.5, 0, 0]]))
        with pytest.raises(AlignError, match="at least three"):
            align_compounds([g1, g2], [c1, c2])

    def test_duplicate_ids_rejected(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        dup = Conformer3D("cmp-a", conf_b.positions)
        with pytest.raises(AlignError, match="distinct"):
            align_compounds([g_a, g_b], [conf_a, dup])

    def test_single_compound_rejected(self):
        g_a, _, conf_a, _ = decorated_pair()
        with pytest.raises(AlignError, match="two compounds"):
            align_compounds([g_a], [conf_a])

    def test_unknown_compound_lookup_raises(self):
        g_a, g_b, conf_a, conf_b = decorated_pair()
        result = align_compounds([g_a, g_b], [conf_a, conf_b])
        with pytest.raises(AlignError, match="zz"):
            result.compound_for("zz")
