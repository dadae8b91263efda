"""Growth-curve statistics and the epoch/week calendar conversion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

HIST_BINS = 40
HIST_RANGE = (0, 40)
#: mean epochs of the two- and three-zone runs, and the weeks they stand for
REFERENCE_EPOCHS = 287.5
REFERENCE_WEEKS = 22.0


class AnalyticsError(ValueError):
    pass


@dataclass(frozen=True)
class RegressionLine:
    slope: float
    intercept: float

    def __call__(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def _xy(points) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(points, dtype=float).reshape(-1, 2) if len(points) else np.empty((0, 2))
    x, y = arr[:, 0], arr[:, 1]
    if len(x) < 2 or np.all(x == x[0]):
        raise AnalyticsError("insufficient points")
    return x, y


def linear_regression(points: Sequence[tuple[float, float]]) -> RegressionLine:
    """Ordinary least-squares line through ``(x, y)`` points."""
    x, y = _xy(points)
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
    return RegressionLine(slope, float(ym - slope * xm))


def mse_vs_regression(points: Sequence[tuple[float, float]]) -> float:
    """Mean squared residual of the points about their own least-squares line."""
    x, y = _xy(points)
    line = linear_regression(points)
    r = y - line(x)
    return float(np.mean(r * r))


def std_dev(sizes: Iterable[float]) -> float:
    """Population standard deviation (divides by N)."""
    a = np.asarray(list(sizes) if not isinstance(sizes, np.ndarray) else sizes, dtype=float)
    if a.size == 0:
        raise AnalyticsError("std of an empty sample")
    return float(np.std(a))


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray
    group_count: int

    @property
    def edges(self) -> np.ndarray:
        return np.arange(HIST_RANGE[0], HIST_RANGE[1] + 1)


def histogram40(sizes: Iterable[float]) -> Histogram:
    """40 one-gram bins over [0, 40]; the last bin is closed on the right.

    ``group_count`` is the number of non-empty bins.
    """
    a = np.asarray(list(sizes) if not isinstance(sizes, np.ndarray) else sizes, dtype=float)
    if a.size and (a.min() < 1 or a.max() > HIST_RANGE[1]):
        raise AnalyticsError(f"size outside [1, 40]: min={a.min()}, max={a.max()}")
    idx = np.minimum(np.floor(a).astype(np.int64), HIST_BINS - 1)
    counts = np.bincount(idx, minlength=HIST_BINS)
    return Histogram(counts, int(np.count_nonzero(counts)))


def epochs_to_weeks(epochs: float) -> float:
    if epochs < 0:
        raise AnalyticsError("epochs must be >= 0")
    return epochs * REFERENCE_WEEKS / REFERENCE_EPOCHS


def weeks_to_epochs(weeks: float) -> float:
    return weeks * REFERENCE_EPOCHS / REFERENCE_WEEKS


def time_saving(baseline_epochs: float, epochs: float) -> dict[str, float]:
    """Weeks saved against a baseline and the reduction as ``saved / baseline``."""
    base_w = epochs_to_weeks(baseline_epochs)
    w = epochs_to_weeks(epochs)
    return {
        "baseline_weeks": base_w,
        "weeks": w,
        "weeks_saved": base_w - w,
        "reduction_pct": 100.0 * (base_w - w) / base_w if base_w else 0.0,
    }
