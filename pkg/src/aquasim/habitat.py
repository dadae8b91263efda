"""The pond grid: density-driven cell quality and feed placement.

Arrays are indexed ``[col, row]`` (``x, y``) throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import ConfigError, Disposition

NEIGHBORHOOD_RADIUS = 2


class QualityLevel(enum.IntEnum):
    """Cell quality; larger is better."""

    Bad = 0
    Tolerable = 1
    Medium = 2
    Good = 3

    @property
    def color(self) -> str:
        return _COLORS[self]

    @property
    def char(self) -> str:
        return _CHARS[self]


_COLORS = {
    QualityLevel.Good: "White",
    QualityLevel.Medium: "Green",
    QualityLevel.Tolerable: "Yellow",
    QualityLevel.Bad: "Red",
}
_CHARS = {
    QualityLevel.Good: ".",
    QualityLevel.Medium: "g",
    QualityLevel.Tolerable: "y",
    QualityLevel.Bad: "r",
}

# row order of TuningDefaults.quality_param_table
TABLE_ORDER = (QualityLevel.Good, QualityLevel.Medium, QualityLevel.Tolerable, QualityLevel.Bad)


@dataclass(frozen=True)
class FeedPellet:
    id: int
    position: tuple[int, int]
    alive: bool = True


def _check_thresholds(thresholds: Sequence[int]) -> None:
    if len(thresholds) != 3 or not thresholds[0] < thresholds[1] < thresholds[2]:
        raise ConfigError(f"density thresholds must be strictly increasing, got {tuple(thresholds)}")


def density_quality(count: int, thresholds: Sequence[int] = (2, 5, 9)) -> QualityLevel:
    """Quality of a cell whose radius-2 Moore neighbourhood holds ``count`` agents."""
    _check_thresholds(thresholds)
    t1, t2, t3 = thresholds
    if count <= t1:
        return QualityLevel.Good
    if count <= t2:
        return QualityLevel.Medium
    if count <= t3:
        return QualityLevel.Tolerable
    return QualityLevel.Bad


def quality_params(q: QualityLevel, table: Sequence[Sequence[float]]) -> tuple[float, float, float]:
    """(o2, ph, temp) of a cell at quality ``q``."""
    o2, ph, temp = table[TABLE_ORDER.index(QualityLevel(q))]
    return (o2, ph, temp)


def neighborhood_counts(xs: np.ndarray, ys: np.ndarray, width: int, height: int, radius: int = NEIGHBORHOOD_RADIUS) -> np.ndarray:
    """Number of agents in the (2r+1)x(2r+1) window around every cell."""
    occ = np.zeros((width + 2 * radius, height + 2 * radius), dtype=np.int64)
    np.add.at(occ, (np.asarray(xs, dtype=np.int64) + radius, np.asarray(ys, dtype=np.int64) + radius), 1)
    csum = np.zeros((occ.shape[0] + 1, occ.shape[1] + 1), dtype=np.int64)
    csum[1:, 1:] = occ.cumsum(0).cumsum(1)
    k = 2 * radius + 1
    return csum[k:, k:] - csum[:-k, k:] - csum[k:, :-k] + csum[:-k, :-k]


def quality_from_counts(counts: np.ndarray, thresholds: Sequence[int]) -> np.ndarray:
    _check_thresholds(thresholds)
    t1, t2, t3 = thresholds
    q = np.full(counts.shape, QualityLevel.Bad, dtype=np.int8)
    q[counts <= t3] = QualityLevel.Tolerable
    q[counts <= t2] = QualityLevel.Medium
    q[counts <= t1] = QualityLevel.Good
    return q


@dataclass
class HabitatGrid:
    width: int
    height: int
    quality: np.ndarray  # int8 QualityLevel values, shape (width, height)
    table: tuple[tuple[float, float, float], ...]

    @classmethod
    def empty(cls, width: int, height: int, table) -> HabitatGrid:
        return cls(width, height, np.full((width, height), QualityLevel.Good, dtype=np.int8), tuple(table))

    def level(self, x: int, y: int) -> QualityLevel:
        return QualityLevel(int(self.quality[x, y]))

    def params(self, x: int, y: int) -> tuple[float, float, float]:
        return quality_params(self.level(x, y), self.table)

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height


def recompute_quality(grid: HabitatGrid, xs, ys, thresholds: Sequence[int]) -> HabitatGrid:
    """A new grid whose quality reflects the given agent positions."""
    counts = neighborhood_counts(xs, ys, grid.width, grid.height)
    return HabitatGrid(grid.width, grid.height, quality_from_counts(counts, thresholds), grid.table)


def feeder_positions(disposition: Disposition, grid_width: int, grid_height: int, spread_radius: int = 20) -> list[tuple[int, int]]:
    """Feeders equidistant along the horizontal midline; none for Uniform."""
    if min(grid_width, grid_height) < 4 * spread_radius:
        raise ConfigError(
            f"grid {grid_width}x{grid_height} too small for feeder spread radius {spread_radius}"
        )
    z = disposition.zones
    row = grid_height // 2
    # round half up; Python's round() is banker's rounding
    return [(int(np.floor(grid_width * i / (z + 1) + 0.5)), row) for i in range(1, z + 1)]


def drop_feed(
    disposition: Disposition,
    pellet_count: int,
    rng: np.random.Generator,
    grid_width: int = 100,
    grid_height: int = 100,
    spread_radius: int = 20,
) -> np.ndarray:
    """Positions of one feeding event, an ``(n, 2)`` integer array of (x, y).

    Zoned feed is split evenly across feeders (remainder to the first ones)
    and scattered uniformly within ``spread_radius`` (Chebyshev) of each
    feeder.  Uniform feed is scattered over the whole pond.
    """
    if pellet_count < 0:
        raise ValueError("pellet_count must be >= 0")
    if disposition is Disposition.Uniform:
        xs = rng.integers(0, grid_width, size=pellet_count)
        ys = rng.integers(0, grid_height, size=pellet_count)
        return np.stack([xs, ys], axis=1).astype(np.int64)
    feeders = feeder_positions(disposition, grid_width, grid_height, spread_radius)
    share, rem = divmod(pellet_count, len(feeders))
    out = []
    for i, (fx, fy) in enumerate(feeders):
        n = share + (1 if i < rem else 0)
        offs = rng.integers(-spread_radius, spread_radius + 1, size=(n, 2))
        pts = offs + np.array([fx, fy])
        pts[:, 0] = np.clip(pts[:, 0], 0, grid_width - 1)
        pts[:, 1] = np.clip(pts[:, 1], 0, grid_height - 1)
        out.append(pts)
    return np.concatenate(out).astype(np.int64) if out else np.empty((0, 2), dtype=np.int64)


def render_frame(grid: HabitatGrid, agent_xy=None, pellet_xy=None) -> str:
    """Text frame, one char per cell; agents 'S' over pellets '*' over quality."""
    chars = np.array([QualityLevel(v).char for v in range(4)])[grid.quality.astype(int)]
    if pellet_xy is not None and len(pellet_xy):
        p = np.asarray(pellet_xy)
        chars[p[:, 0], p[:, 1]] = "*"
    if agent_xy is not None and len(agent_xy):
        a = np.asarray(agent_xy)
        chars[a[:, 0], a[:, 1]] = "S"
    return "\n".join("".join(chars[:, y]) for y in range(grid.height)) + "\n"
