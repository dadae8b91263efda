"""Fuzzy evaluation of a shrimp's physiological state from water parameters.

Each parameter has two fuzzy sets, *optimal* and *bad* (its complement).
Eight rules combine the three parameters with a min intersection; the rule
outputs are singletons averaged by firing strength and the crisp value is
thresholded into Normal / Tolerable / Bad.  Death (all three bad) is not
simulated and collapses onto Bad.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

RAMP_FRACTION = 0.1


class FuzzyError(ValueError):
    pass


@dataclass(frozen=True)
class ParamUniverse:
    name: str
    lo: float
    hi: float
    opt_lo: float
    opt_hi: float

    def __post_init__(self):
        if not (self.lo <= self.opt_lo < self.opt_hi <= self.hi):
            raise FuzzyError(f"inconsistent universe for {self.name}")

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)


OXYGEN = ParamUniverse("oxygen", 0.0, 14.0, 5.0, 12.0)
PH = ParamUniverse("ph", 0.0, 14.0, 6.5, 8.5)
TEMPERATURE = ParamUniverse("temperature", 18.0, 36.0, 22.0, 30.0)
UNIVERSES = (OXYGEN, PH, TEMPERATURE)


class Label(enum.IntEnum):
    Normal = 0
    Tolerable = 1
    Bad = 2


@dataclass(frozen=True)
class ShrimpState:
    label: Label
    crisp: float


# Antecedent pattern per rule, (oxygen, ph, temperature); True = optimal.
RULES: tuple[tuple[bool, bool, bool], ...] = (
    (True, True, True),     # R1 normal
    (True, True, False),    # R2 tolerable
    (True, False, True),    # R3 tolerable
    (False, True, True),    # R4 tolerable
    (False, False, True),   # R5 bad
    (False, True, False),   # R6 bad
    (True, False, False),   # R7 bad
    (False, False, False),  # R8 death, not simulated
)
SINGLETONS = (1.0, 0.6, 0.6, 0.6, 0.2, 0.2, 0.2, 0.0)
BAD_BELOW = 0.4
NORMAL_FROM = 0.8


def membership_optimal(u: ParamUniverse, x: float, opt_override: tuple[float, float] | None = None) -> float:
    """Degree to which ``x`` belongs to the optimal set of ``u``.

    Trapezoid with linear ramps of half-width ``0.1 * (opt_hi - opt_lo)``
    centred on each optimal bound.  ``opt_override`` replaces the bounds with
    an agent's own tolerance pair; the ramp width stays that of the species
    range, so a wider tolerance never lowers the degree.  The bad-set degree
    is ``1 - result``.
    """
    lo, hi = (u.opt_lo, u.opt_hi) if opt_override is None else opt_override
    if lo > hi:
        raise FuzzyError(f"tolerance override ({lo}, {hi}) has min > max")
    x = u.clamp(x)
    w = RAMP_FRACTION * (u.opt_hi - u.opt_lo)
    rising = (x - (lo - w)) / (2 * w)
    falling = ((hi + w) - x) / (2 * w)
    return min(1.0, max(0.0, min(rising, falling)))


def rule_strengths(mu_o2: tuple[float, float], mu_ph: tuple[float, float], mu_t: tuple[float, float]) -> list[float]:
    """Firing strength of R1..R8; each argument is an (optimal, bad) pair."""
    degrees = (mu_o2, mu_ph, mu_t)
    out = []
    for pattern in RULES:
        out.append(min(d[0] if optimal else d[1] for d, optimal in zip(degrees, pattern)))
    return out


def label_for(crisp: float) -> Label:
    if crisp < BAD_BELOW:
        return Label.Bad
    if crisp < NORMAL_FROM:
        return Label.Tolerable
    return Label.Normal


def defuzzify(strengths: Sequence[float]) -> ShrimpState:
    total = sum(strengths)
    if total <= 0.0:
        raise FuzzyError("no rule fired")
    # group by output level so a single-level mix gives that level exactly
    by_level: dict[float, float] = {}
    for s, v in zip(strengths, SINGLETONS):
        by_level[v] = by_level.get(v, 0.0) + s
    crisp = sum(v * (s / total) for v, s in by_level.items())
    crisp = min(1.0, max(0.0, crisp))
    return ShrimpState(label_for(crisp), crisp)


def evaluate(
    o2: float,
    ph: float,
    temp: float,
    tolerance: Sequence[tuple[float, float] | None] | None = None,
) -> ShrimpState:
    """State of a shrimp standing in water with the given parameters.

    ``tolerance`` optionally gives per-parameter (min, max) overrides, in the
    order oxygen, pH, temperature (typically a chromosome's tolerance segment).
    """
    overrides = tolerance if tolerance is not None else (None, None, None)
    pairs = []
    for u, x, ov in zip(UNIVERSES, (o2, ph, temp), overrides):
        mu = membership_optimal(u, x, ov)
        pairs.append((mu, 1.0 - mu))
    return defuzzify(rule_strengths(*pairs))
