"""Scenario parameters and the 16-configuration experiment matrix.

Every tunable constant of the simulator lives in :class:`TuningDefaults` so a
scenario can be audited (and overridden from JSON) in one place.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

#: One simulated agent stands for this many real shrimp.
SCALE = 8000
#: Generations per pre-experiment (fixed, no early stop).
GENERATIONS = 10
#: Discretised size bounds, grams.
MIN_SIZE = 1
MAX_SIZE = 38


class ConfigError(ValueError):
    """Raised for malformed scenarios or inconsistent parameters."""


class Disposition(enum.Enum):
    ThreeZones = "3Z"
    TwoZones = "2Z"
    OneZone = "1Z"
    Uniform = "U"

    @property
    def zones(self) -> int:
        return {"3Z": 3, "2Z": 2, "1Z": 1, "U": 0}[self.value]


class FeedingMode(enum.Enum):
    Normal = "N"
    Alta = "A"


class Density(enum.Enum):
    Intensive = "I"
    SemiIntensive = "SI"


@dataclass(frozen=True)
class TuningDefaults:
    feeding_period: int = 4
    # None -> derived from feed_fraction and the harvest biomass, see pellets_per_drop()
    pellets_per_drop_normal: int | None = None
    feed_fraction: float = 0.03
    alta_multiplier: float = 1.2
    # wide enough that zoned crops finish in a few hundred epochs
    feeder_spread_radius: int = 20
    smell_radius_base: float = 6.0
    displacement_base: int = 1
    growth_pellets_per_gram: int = 3
    # fraction of each parameter's optimal range width
    mutation_sigma: float = 0.05
    tournament_size: int = 3
    density_thresholds: tuple[int, int, int] = (2, 5, 9)
    # (o2 ppm, pH, temp C) for Good, Medium, Tolerable, Bad
    quality_param_table: tuple[tuple[float, float, float], ...] = (
        (8.0, 7.5, 26.0),
        (6.0, 7.0, 28.0),
        (4.5, 7.0, 28.0),
        (3.5, 6.0, 28.0),
    )

    def __post_init__(self):
        t = tuple(int(v) for v in self.density_thresholds)
        object.__setattr__(self, "density_thresholds", t)
        table = tuple(tuple(float(v) for v in row) for row in self.quality_param_table)
        object.__setattr__(self, "quality_param_table", table)
        if len(t) != 3 or not t[0] < t[1] < t[2]:
            raise ConfigError(f"density_thresholds must be 3 strictly increasing counts, got {t}")
        if len(table) != 4 or any(len(row) != 3 for row in table):
            raise ConfigError("quality_param_table needs 4 rows of (o2, ph, temp)")
        if self.feeding_period < 1:
            raise ConfigError("feeding_period must be >= 1")
        if self.displacement_base < 1:
            raise ConfigError("displacement_base must be >= 1")
        if self.growth_pellets_per_gram < 1:
            raise ConfigError("growth_pellets_per_gram must be >= 1")
        if self.tournament_size < 1:
            raise ConfigError("tournament_size must be >= 1")
        if self.mutation_sigma < 0:
            raise ConfigError("mutation_sigma must be >= 0")
        if self.pellets_per_drop_normal is not None and self.pellets_per_drop_normal < 0:
            raise ConfigError("pellets_per_drop_normal must be >= 0")


POPULATION = {Density.Intensive: 500, Density.SemiIntensive: 250}


@dataclass(frozen=True)
class ExperimentConfig:
    disposition: Disposition
    feeding_mode: FeedingMode
    density: Density
    rng_seed: int = 0
    grid_width: int = 100
    grid_height: int = 100
    population_size: int | None = None
    epoch_cap: int = 2000
    stop_mean_size: float = 24.0
    tuning: TuningDefaults = field(default_factory=TuningDefaults)

    def __post_init__(self):
        if self.population_size is None:
            object.__setattr__(self, "population_size", POPULATION[self.density])
        if self.population_size < 1:
            raise ConfigError("population_size must be >= 1")
        if self.epoch_cap < 1:
            raise ConfigError("epoch_cap must be > 0")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigError("rng_seed must fit in an unsigned 64-bit integer")
        if self.grid_width < 1 or self.grid_height < 1:
            raise ConfigError("grid dimensions must be positive")

    @property
    def code(self) -> str:
        return config_code(self)

    def pellets_per_drop(self) -> int:
        """Pellets released per feeding event, after the feeding-mode multiplier."""
        base = self.tuning.pellets_per_drop_normal
        if base is None:
            harvest_biomass = self.population_size * self.stop_mean_size
            base = math.ceil(self.tuning.feed_fraction * harvest_biomass)
        if self.feeding_mode is FeedingMode.Alta:
            # exact rational product, 1.2 * 360 must not round up to 433
            return math.ceil(Fraction(str(self.tuning.alta_multiplier)) * base)
        return base

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "disposition": self.disposition.name,
            "feeding_mode": self.feeding_mode.name,
            "density": self.density.name,
            "seed": self.rng_seed,
        }
        for f in dataclasses.fields(self):
            if f.name in ("disposition", "feeding_mode", "density", "rng_seed", "tuning"):
                continue
            d[f.name] = getattr(self, f.name)
        for f in dataclasses.fields(self.tuning):
            value = getattr(self.tuning, f.name)
            if isinstance(value, tuple):
                value = json.loads(json.dumps(value))
            d[f.name] = value
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


_CONFIG_KEYS = {"grid_width", "grid_height", "population_size", "epoch_cap", "stop_mean_size"}
_TUNING_KEYS = {f.name for f in dataclasses.fields(TuningDefaults)}


def _parse_enum(enum_cls, key: str, raw):
    for member in enum_cls:
        if raw in (member.name, member.value):
            return member
    if enum_cls is Density and raw == "S.I":
        return Density.SemiIntensive
    raise ConfigError(f"invalid value {raw!r} for key {key!r}")


def config_from_dict(data: dict[str, Any]) -> ExperimentConfig:
    """Build a config from a scenario mapping; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ConfigError("scenario must be a JSON object")
    required = ("disposition", "feeding_mode", "density", "seed")
    for key in required:
        if key not in data:
            raise ConfigError(f"missing required key {key!r}")
    unknown = set(data) - set(required) - _CONFIG_KEYS - _TUNING_KEYS
    if unknown:
        raise ConfigError(f"unknown key {sorted(unknown)[0]!r}")

    seed = data["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"invalid value {seed!r} for key 'seed'")
    tuning_kw = {k: data[k] for k in _TUNING_KEYS if k in data}
    config_kw = {k: data[k] for k in _CONFIG_KEYS if k in data}
    try:
        tuning = TuningDefaults(**tuning_kw)
        return ExperimentConfig(
            disposition=_parse_enum(Disposition, "disposition", data["disposition"]),
            feeding_mode=_parse_enum(FeedingMode, "feeding_mode", data["feeding_mode"]),
            density=_parse_enum(Density, "density", data["density"]),
            rng_seed=seed,
            tuning=tuning,
            **config_kw,
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_scenario(path: str | Path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    return config_from_dict(data)


def config_code(config: ExperimentConfig) -> str:
    """Short name such as ``"3Z-N-I"`` or ``"U-A-SI"``."""
    return f"{config.disposition.value}-{config.feeding_mode.value}-{config.density.value}"


def derive_seeds(seed: int, n: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def matrix_configs(base: TuningDefaults | None = None, seed: int = 0, **overrides) -> list[ExperimentConfig]:
    """The 16 disposition x mode x density combinations in results-table order.

    Density is the outermost axis, then feeding mode, then disposition, so
    experiment 1 is ``3Z-N-I`` and experiment 8 is ``U-A-I``.
    """
    base = base or TuningDefaults()
    triples = [
        (disp, mode, dens)
        for dens in (Density.Intensive, Density.SemiIntensive)
        for mode in (FeedingMode.Normal, FeedingMode.Alta)
        for disp in (Disposition.ThreeZones, Disposition.TwoZones, Disposition.OneZone, Disposition.Uniform)
    ]
    seeds = derive_seeds(seed, len(triples))
    return [
        ExperimentConfig(disposition=d, feeding_mode=m, density=k, rng_seed=s, tuning=base, **overrides)
        for (d, m, k), s in zip(triples, seeds)
    ]
