"""Difference view model: identity case, mass conservation, inner sizing."""

import math

import numpy as np
import pytest

from chemmap.dr import Projection2D, TrustScores
from chemmap.views import (
    OPACITY_FLOOR,
    HexGrid,
    Selection,
    ViewError,
    bin_points,
    difference_view,
)


def _trust(ids, kendall=None):
    n = len(ids)
    kendall = np.asarray(np.ones(n) if kendall is None else kendall, dtype=float)
    return TrustScores("ecfp", tuple(ids), np.ones(n), kendall,
                       np.zeros(n, dtype=bool))


def _projection(coords, tag="ecfp"):
    ids = tuple(f"m{i}" for i in range(len(coords)))
    return Projection2D(tag, ids, np.asarray(coords, dtype=float))


def test_identity_projection_inner_matches_outer():
    rng = np.random.default_rng(0)
    proj = _projection(rng.uniform(-8, 8, size=(40, 2)))
    grid = HexGrid(2.0)
    bins = bin_points(proj, 2.0)
    chosen = [b for b in bins if b.count >= 2][:2]
    assert len(chosen) == 2, "fixture needs two multi-member bins"
    selection = Selection(
        frozenset(cid for b in chosen for cid in b.member_ids), "hexes"
    )
    model = difference_view(selection, proj, proj, grid, _trust(proj.ids))
    inner_by_axial = {h.parent: h for h in model.inner_hexes}
    assert set(inner_by_axial) == {b.axial for b in chosen}
    for b in chosen:
        inner = inner_by_axial[b.axial]
        assert inner.count == b.count
        assert set(inner.member_ids) == set(b.member_ids)
        assert inner.center == b.center


@pytest.mark.parametrize("seed", range(5))
def test_mass_conservation(seed):
    rng = np.random.default_rng(seed)
    n = 60
    ids = tuple(f"m{i}" for i in range(n))
    a = Projection2D("ecfp", ids, rng.uniform(-10, 10, size=(n, 2)))
    b = Projection2D("path", ids, rng.uniform(-10, 10, size=(n, 2)))
    chosen = frozenset(rng.choice(ids, size=25, replace=False).tolist())
    model = difference_view(Selection(chosen, "lasso"), a, b,
                            HexGrid(1.5), _trust(ids))
    assert sum(h.count for h in model.inner_hexes) == 25
    union = set().union(*(set(h.member_ids) for h in model.inner_hexes))
    assert union == set(chosen)
    assert model.reference_tag == "ecfp"
    assert model.compared_tag == "path"


def test_b_splits_one_a_bin_into_three():
    grid = HexGrid(1.0)
    # four compounds share one A-cell; B scatters them over three cells
    ax, ay = grid.center_of(0, 0)
    coords_a = np.array([[ax + 0.05, ay], [ax - 0.05, ay],
                         [ax, ay + 0.05], [ax, ay - 0.05]])
    cells_b = [(0, 0), (0, 0), (2, -1), (4, 0)]
    coords_b = np.array([grid.center_of(q, r) for q, r in cells_b])
    a = Projection2D("ecfp", ("m0", "m1", "m2", "m3"), coords_a)
    b = Projection2D("path", ("m0", "m1", "m2", "m3"), coords_b)
    selection = Selection({"m0", "m1", "m2", "m3"}, "hexes")
    model = difference_view(selection, a, b, grid, _trust(a.ids))
    assert len(model.inner_hexes) == 3
    counts = sorted(h.count for h in model.inner_hexes)
    assert counts == [1, 1, 2]

    # size strictly increases with count; biggest stays inside the cell
    by_count = {h.count: h.size for h in model.inner_hexes}
    assert by_count[2] == pytest.approx(0.9 * grid.circumradius)
    assert by_count[1] == pytest.approx(0.9 * grid.circumradius * math.sqrt(0.5))
    assert by_count[1] < by_count[2]


def test_single_compound_selection():
    rng = np.random.default_rng(3)
    proj = _projection(rng.uniform(-5, 5, size=(10, 2)))
    model = difference_view(Selection({"m4"}, "table"), proj, proj,
                            HexGrid(1.0), _trust(proj.ids))
    assert len(model.inner_hexes) == 1
    inner = model.inner_hexes[0]
    assert inner.member_ids == ("m4",)
    assert inner.size == pytest.approx(0.9)


def test_outer_opacity_encodes_kendall_trust():
    grid = HexGrid(1.0)
    coords = np.array([grid.center_of(0, 0), grid.center_of(0, 0),
                       grid.center_of(3, 0), grid.center_of(5, 5)])
    proj = _projection(coords)
    trust = _trust(proj.ids, kendall=[0.6, 0.8, -0.4, 0.3])
    model = difference_view(Selection({"m0"}, "hexes"), proj, proj, grid, trust)
    by_axial = {b.axial: b for b in model.outer_bins}
    assert by_axial[(0, 0)].mean_trust == pytest.approx(0.7)
    assert by_axial[(0, 0)].opacity == pytest.approx(0.7)
    assert by_axial[(3, 0)].opacity == OPACITY_FLOOR  # negative trust floors
    assert by_axial[(5, 5)].opacity == pytest.approx(0.3)

    low = difference_view(Selection({"m0"}, "hexes"), proj, proj, grid, trust,
                          outer_statistic="min")
    assert {b.axial: b for b in low.outer_bins}[(0, 0)].mean_trust == pytest.approx(0.6)


def test_missing_compounds_listed():
    rng = np.random.default_rng(1)
    ids = tuple(f"m{i}" for i in range(6))
    a = Projection2D("ecfp", ids, rng.uniform(-3, 3, size=(6, 2)))
    b = Projection2D("path", ids[:4], rng.uniform(-3, 3, size=(4, 2)))
    with pytest.raises(ViewError) as exc:
        difference_view(Selection({"m1", "m4", "m5"}, "hexes"), a, b,
                        HexGrid(1.0), _trust(ids))
    assert "m4" in str(exc.value)
    assert "m5" in str(exc.value)


def test_empty_selection_rejected():
    rng = np.random.default_rng(2)
    proj = _projection(rng.uniform(-3, 3, size=(5, 2)))
    with pytest.raises(ViewError, match="non-empty"):
        difference_view(Selection(frozenset(), "hexes"), proj, proj,
                        HexGrid(1.0), _trust(proj.ids))


def test_unknown_statistic_rejected():
    rng = np.random.default_rng(4)
    proj = _projection(rng.uniform(-3, 3, size=(5, 2)))
    with pytest.raises(ViewError, match="statistic"):
        difference_view(Selection({"m0"}, "hexes"), proj, proj, HexGrid(1.0),
                        _trust(proj.ids), outer_statistic="median")
