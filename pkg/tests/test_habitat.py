import numpy as np
import pytest

from aquasim.config import ConfigError, Disposition, TuningDefaults
from aquasim.fuzzy import Label, evaluate
from aquasim.habitat import (HabitatGrid, QualityLevel, density_quality, drop_feed, feeder_positions,
                             neighborhood_counts, quality_params, recompute_quality, render_frame)

TABLE = TuningDefaults().quality_param_table
THR = (2, 5, 9)


def test_levels_ordered_and_coloured():
    assert QualityLevel.Good > QualityLevel.Medium > QualityLevel.Tolerable > QualityLevel.Bad
    assert [q.color for q in (QualityLevel.Good, QualityLevel.Medium, QualityLevel.Tolerable, QualityLevel.Bad)] == [
        "White", "Green", "Yellow", "Red"]


def test_density_quality_examples():
    assert density_quality(0, THR) is QualityLevel.Good
    assert density_quality(10, THR) is QualityLevel.Bad
    assert [density_quality(c, THR) for c in (2, 3, 5, 6, 9)] == [
        QualityLevel.Good, QualityLevel.Medium, QualityLevel.Medium, QualityLevel.Tolerable, QualityLevel.Tolerable]
    with pytest.raises(ConfigError):
        density_quality(1, (3, 3, 4))


def test_density_quality_anti_monotone():
    levels = [density_quality(c, THR) for c in range(21)]
    assert all(a >= b for a, b in zip(levels, levels[1:]))


@pytest.mark.parametrize("q, label", [
    (QualityLevel.Good, Label.Normal),
    (QualityLevel.Medium, Label.Normal),
    (QualityLevel.Tolerable, Label.Tolerable),
    (QualityLevel.Bad, Label.Bad),
])
def test_quality_ladder_through_fuzzy(q, label):
    assert evaluate(*quality_params(q, TABLE)).label is label


def test_quality_params_default_rows():
    assert quality_params(QualityLevel.Good, TABLE) == (8.0, 7.5, 26.0)
    assert quality_params(QualityLevel.Bad, TABLE) == (3.5, 6.0, 28.0)


def test_neighborhood_counts_match_brute_force(rng):
    xs, ys = rng.integers(0, 12, 40), rng.integers(0, 9, 40)
    counts = neighborhood_counts(xs, ys, 12, 9)
    for cx in range(12):
        for cy in range(9):
            expected = np.sum((np.abs(xs - cx) <= 2) & (np.abs(ys - cy) <= 2))
            assert counts[cx, cy] == expected


def test_recompute_quality():
    grid = HabitatGrid.empty(20, 20, TABLE)
    empty = recompute_quality(grid, [], [], THR)
    assert np.all(empty.quality == QualityLevel.Good)
    xs = np.array([10, 11, 9, 10, 12, 8, 10, 10, 11, 9, 12, 8])
    ys = np.array([10, 10, 10, 11, 12, 8, 9, 12, 8, 9, 10, 11])
    g = recompute_quality(grid, xs, ys, THR)
    assert g.level(10, 10) is QualityLevel.Bad
    assert g.level(0, 0) is QualityLevel.Good
    assert np.array_equal(g.quality, recompute_quality(g, xs, ys, THR).quality)


def test_feeder_positions():
    assert feeder_positions(Disposition.OneZone, 100, 100) == [(50, 50)]
    assert feeder_positions(Disposition.ThreeZones, 100, 100) == [(25, 50), (50, 50), (75, 50)]
    assert feeder_positions(Disposition.TwoZones, 100, 100) == [(33, 50), (67, 50)]
    assert feeder_positions(Disposition.Uniform, 100, 100) == []
    with pytest.raises(ConfigError):
        feeder_positions(Disposition.OneZone, 30, 100, spread_radius=10)


@pytest.mark.parametrize("disp", [Disposition.OneZone, Disposition.TwoZones, Disposition.ThreeZones])
def test_feeders_mirror_symmetric(disp):
    cols = sorted(x for x, _ in feeder_positions(disp, 100, 100))
    assert cols == sorted(100 - x for x in cols)


def test_drop_feed_zero(rng):
    assert len(drop_feed(Disposition.ThreeZones, 0, rng)) == 0
    assert len(drop_feed(Disposition.Uniform, 0, rng)) == 0


def test_drop_feed_zoned_split_and_radius(rng):
    pts = drop_feed(Disposition.ThreeZones, 30, rng, spread_radius=10)
    feeders = feeder_positions(Disposition.ThreeZones, 100, 100)
    for i, (fx, fy) in enumerate(feeders):
        chunk = pts[10 * i: 10 * (i + 1)]
        assert np.all(np.maximum(np.abs(chunk[:, 0] - fx), np.abs(chunk[:, 1] - fy)) <= 10)
    uneven = drop_feed(Disposition.TwoZones, 7, rng, spread_radius=10)
    near_first = np.abs(uneven[:, 0] - 33) <= 10
    assert near_first[:4].all() and not near_first[4:].any()


def test_drop_feed_uniform_quadrants():
    pts = drop_feed(Disposition.Uniform, 10000, np.random.default_rng(7))
    quad = (pts[:, 0] >= 50).astype(int) * 2 + (pts[:, 1] >= 50)
    counts = np.bincount(quad, minlength=4)
    sigma = np.sqrt(10000 * 0.25 * 0.75)
    assert np.all(np.abs(counts - 2500) < 4 * sigma)
    chi2 = np.sum((counts - 2500) ** 2 / 2500)
    assert chi2 < 16.27  # 99.9% point, 3 dof


def test_render_frame():
    grid = HabitatGrid.empty(4, 3, TABLE)
    grid.quality[3, 2] = QualityLevel.Bad
    grid.quality[2, 0] = QualityLevel.Medium
    text = render_frame(grid, agent_xy=[(0, 0)], pellet_xy=[(1, 1), (0, 0)])
    assert text == "S.g.\n.*..\n...r\n"
