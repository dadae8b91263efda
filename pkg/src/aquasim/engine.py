"""Epoch loop, generation loop and the 10-generation pre-experiment."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernel, analytics
from .agents import ShrimpAgent, act
from .config import GENERATIONS, MAX_SIZE, ExperimentConfig, TuningDefaults, config_code, matrix_configs
from .fuzzy import evaluate
from .genome import Chromosome, fitness, next_generation, spawn_initial_population
from .habitat import (HabitatGrid, QualityLevel, drop_feed, feeder_positions, quality_params,
                      recompute_quality, render_frame)

log = logging.getLogger(__name__)

BACKENDS = ("numba", "python")


class SimulationError(RuntimeError):
    pass


class PelletStore:
    """Live pellets: flat arrays plus a per-cell list ordered by id."""

    def __init__(self, width: int, height: int, capacity: int = 4096):
        self.head = np.full((width, height), -1, dtype=np.int64)
        self.tail = np.full((width, height), -1, dtype=np.int64)
        self.nxt = np.full(capacity, -1, dtype=np.int64)
        self.px = np.zeros(capacity, dtype=np.int64)
        self.py = np.zeros(capacity, dtype=np.int64)
        self.alive = np.zeros(capacity, dtype=np.bool_)
        self.next_id = 0
        self.live = 0

    def _grow(self, need: int) -> None:
        cap = len(self.px)
        if need <= cap:
            return
        new = max(need, 2 * cap)
        for name, fill in (("nxt", -1), ("px", 0), ("py", 0), ("alive", False)):
            old = getattr(self, name)
            arr = np.full(new, fill, dtype=old.dtype)
            arr[:cap] = old
            setattr(self, name, arr)

    def add(self, xy: np.ndarray) -> None:
        n = len(xy)
        if n == 0:
            return
        self._grow(self.next_id + n)
        xy = np.ascontiguousarray(xy, dtype=np.int64)
        _kernel.add_pellets(xy[:, 0].copy(), xy[:, 1].copy(), self.next_id,
                            self.head, self.tail, self.nxt, self.px, self.py, self.alive)
        self.next_id += n
        self.live += n

    def as_dict(self) -> dict[int, tuple[int, int]]:
        ids = np.flatnonzero(self.alive[: self.next_id])
        return {int(i): (int(self.px[i]), int(self.py[i])) for i in ids}

    def positions(self) -> np.ndarray:
        ids = np.flatnonzero(self.alive[: self.next_id])
        return np.stack([self.px[ids], self.py[ids]], axis=1)

    def count_alive(self) -> int:
        return int(np.count_nonzero(self.alive[: self.next_id]))

    def remove(self, pid: int) -> None:
        x, y = self.px[pid], self.py[pid]
        prev, cur = -1, self.head[x, y]
        while cur != pid:
            if cur < 0:
                raise SimulationError(f"pellet {pid} not in its cell list")
            prev, cur = cur, self.nxt[cur]
        if prev < 0:
            self.head[x, y] = self.nxt[pid]
        else:
            self.nxt[prev] = self.nxt[pid]
        if self.tail[x, y] == pid:
            self.tail[x, y] = prev
        self.alive[pid] = False
        self.live -= 1


def state_table(population: Sequence[Chromosome], table) -> np.ndarray:
    """Fuzzy label of every agent at each of the four quality levels.

    Cell parameters depend only on the quality level, so one evaluation per
    (tolerance, level) covers a whole generation.
    """
    out = np.empty((len(population), 4), dtype=np.int64)
    cache: dict = {}
    for i, c in enumerate(population):
        row = cache.get(c.tolerance)
        if row is None:
            row = [int(evaluate(*quality_params(QualityLevel(q), table), tolerance=c.tolerance).label) for q in range(4)]
            cache[c.tolerance] = row
        out[i] = row
    return out


@dataclass
class WorldState:
    config: ExperimentConfig
    population: list[Chromosome]
    rng: np.random.Generator
    epoch: int = 0
    grid: HabitatGrid = None
    ax: np.ndarray = None
    ay: np.ndarray = None
    size: np.ndarray = None
    feed: np.ndarray = None
    pellets: PelletStore = None
    dropped: int = 0
    eaten: int = 0

    def __post_init__(self):
        cfg = self.config
        n = len(self.population)
        if n != cfg.population_size:
            raise SimulationError(f"population has {n} chromosomes, config expects {cfg.population_size}")
        if cfg.disposition.zones:
            feeder_positions(cfg.disposition, cfg.grid_width, cfg.grid_height, cfg.tuning.feeder_spread_radius)
        self.grid = HabitatGrid.empty(cfg.grid_width, cfg.grid_height, cfg.tuning.quality_param_table)
        self.ax = self.rng.integers(0, cfg.grid_width, size=n).astype(np.int64)
        self.ay = self.rng.integers(0, cfg.grid_height, size=n).astype(np.int64)
        self.size = np.array([c.size for c in self.population], dtype=np.int64)
        self.feed = np.zeros(n, dtype=np.int64)
        self.disp_base = np.array([c.displacement for c in self.population], dtype=np.int64)
        self.smell_base = np.array([c.smell for c in self.population], dtype=np.float64)
        self.states = state_table(self.population, cfg.tuning.quality_param_table)
        self.pellets = PelletStore(cfg.grid_width, cfg.grid_height)

    @property
    def mean_size(self) -> float:
        return float(self.size.mean())

    def frame(self) -> str:
        return render_frame(self.grid, np.stack([self.ax, self.ay], axis=1), self.pellets.positions())


def _python_pass(world: WorldState, uniforms: np.ndarray) -> int:
    cfg = world.config
    pellets = world.pellets.as_dict()
    before = set(pellets)
    eaten = 0
    for i, chrom in enumerate(world.population):
        agent = ShrimpAgent(i, int(world.ax[i]), int(world.ay[i]), chrom,
                            size=int(world.size[i]), feed_count=int(world.feed[i]))
        params = world.grid.params(agent.x, agent.y)
        state = evaluate(*params, tolerance=chrom.tolerance).label
        eaten += act(agent, world.grid, pellets, uniforms[i], state, cfg.tuning.growth_pellets_per_gram)
        world.ax[i], world.ay[i] = agent.x, agent.y
        world.size[i], world.feed[i] = agent.size, agent.feed_count
    for pid in sorted(before - set(pellets)):
        world.pellets.remove(pid)
    return eaten


def run_epoch(world: WorldState, backend: str = "numba") -> WorldState:
    """Feed (on schedule), refresh quality, let every agent act in id order."""
    cfg = world.config
    t = cfg.tuning
    live_before = world.pellets.live
    dropped = 0
    if world.epoch % t.feeding_period == 0:
        xy = drop_feed(cfg.disposition, cfg.pellets_per_drop(), world.rng,
                       cfg.grid_width, cfg.grid_height, t.feeder_spread_radius)
        world.pellets.add(xy)
        dropped = len(xy)
    world.grid = recompute_quality(world.grid, world.ax, world.ay, t.density_thresholds)
    uniforms = world.rng.random((len(world.population), int(world.disp_base.max())))
    n_agents = len(world.ax)
    if backend == "numba":
        p = world.pellets
        eaten = _kernel.agent_pass(world.ax, world.ay, world.size, world.feed, world.disp_base,
                                   world.smell_base, world.states, world.grid.quality.astype(np.int64),
                                   p.head, p.nxt, p.px, p.py, p.alive, uniforms,
                                   t.growth_pellets_per_gram, MAX_SIZE)
        p.live -= eaten
    elif backend == "python":
        eaten = _python_pass(world, uniforms)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    world.epoch += 1
    world.dropped += dropped
    world.eaten += eaten

    if len(world.ax) != n_agents:
        raise SimulationError("agent count changed within a generation")
    if live_before + dropped - eaten != world.pellets.count_alive():
        raise SimulationError(f"pellet conservation violated at epoch {world.epoch}")
    if world.size.max() > MAX_SIZE:
        raise SimulationError(f"size above {MAX_SIZE} g at epoch {world.epoch}")
    return world


@dataclass(eq=False)
class GenerationResult:
    generation_index: int
    epochs_used: int
    trajectory: np.ndarray  # (epochs_used, 2): epoch number, mean size after it
    final_sizes: np.ndarray
    mse: float
    std: float
    histogram: np.ndarray
    group_count: int
    min_size: int
    max_size: int
    capped: bool
    pellets_dropped: int
    pellets_eaten: int
    final_population: list[Chromosome] = field(repr=False, default_factory=list)
    population: list[Chromosome] = field(repr=False, default_factory=list)  # as spawned

    @property
    def mean_size(self) -> float:
        return float(self.final_sizes.mean())

    @property
    def fitness_variance(self) -> float:
        """Fitness variance of the generation as spawned, before any growth."""
        return float(np.var([fitness(c) for c in self.population]))

    def summary(self) -> dict:
        return {
            "generation": self.generation_index,
            "epochs": self.epochs_used,
            "mse": self.mse,
            "std": self.std,
            "mean_size": self.mean_size,
            "max_size": self.max_size,
            "min_size": self.min_size,
            "groups": self.group_count,
            "capped": self.capped,
        }


FrameSink = Callable[[int, str], None]


def run_generation(
    config: ExperimentConfig,
    population: Sequence[Chromosome],
    rng: np.random.Generator | None = None,
    generation_index: int = 0,
    backend: str = "numba",
    frame_every: int | None = None,
    frame_sink: FrameSink | None = None,
) -> GenerationResult:
    """Grow one crop until the mean size reaches the stop size or the epoch cap."""
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    world = WorldState(config, list(population), rng)
    traj = []
    while world.mean_size < config.stop_mean_size and world.epoch < config.epoch_cap:
        run_epoch(world, backend)
        traj.append((world.epoch, world.mean_size))
        if frame_every and frame_sink and world.epoch % frame_every == 0:
            frame_sink(world.epoch, world.frame())
    capped = world.mean_size < config.stop_mean_size
    if capped:
        log.warning("%s generation %d hit the epoch cap (%d)", config_code(config), generation_index, config.epoch_cap)

    trajectory = np.array(traj, dtype=float).reshape(-1, 2)
    try:
        mse = analytics.mse_vs_regression(trajectory)
    except analytics.AnalyticsError:
        mse = float("nan")
    hist = analytics.histogram40(world.size)
    return GenerationResult(
        generation_index=generation_index,
        epochs_used=world.epoch,
        trajectory=trajectory,
        final_sizes=world.size.copy(),
        mse=mse,
        std=analytics.std_dev(world.size),
        histogram=hist.counts,
        group_count=hist.group_count,
        min_size=int(world.size.min()),
        max_size=int(world.size.max()),
        capped=capped,
        pellets_dropped=world.dropped,
        pellets_eaten=world.eaten,
        final_population=[c.grown(s) for c, s in zip(world.population, world.size)],
        population=list(world.population),
    )


def best_by_mse(results: Sequence[GenerationResult]) -> GenerationResult:
    """Lowest MSE, earliest generation on ties; undefined MSE never wins."""
    key = [r.mse if np.isfinite(r.mse) else np.inf for r in results]
    return results[int(np.argmin(key))]


def run_pre_experiment(
    config: ExperimentConfig,
    generations: int = GENERATIONS,
    backend: str = "numba",
    frame_every: int | None = None,
    frame_sink: Callable[[int, int, str], None] | None = None,
) -> tuple[GenerationResult, list[GenerationResult]]:
    """Run the GA for a fixed number of generations and keep the min-MSE one."""
    t = config.tuning
    rng = np.random.default_rng(config.rng_seed)
    pop = spawn_initial_population(config.population_size, t.displacement_base, t.smell_radius_base)
    results = []
    for g in range(generations):
        sink = (lambda e, text, g=g: frame_sink(g, e, text)) if frame_sink else None
        res = run_generation(config, pop, rng, g, backend, frame_every, sink)
        results.append(res)
        log.debug("%s gen %d: %d epochs, mse %.4f", config_code(config), g, res.epochs_used, res.mse)
        if g + 1 < generations:
            pop = next_generation(res.final_population, rng, t.tournament_size, t.mutation_sigma,
                                  t.displacement_base, t.smell_radius_base)
    return best_by_mse(results), results


SUMMARY_COLUMNS = ("exp_no", "config", "mse", "std", "mean_size", "max_size", "min_size", "epochs", "groups", "weeks")


def summary_row(exp_no: int, config: ExperimentConfig, best: GenerationResult) -> dict:
    return {
        "exp_no": exp_no,
        "config": config_code(config),
        "mse": best.mse,
        "std": best.std,
        "mean_size": best.mean_size,
        "max_size": best.max_size,
        "min_size": best.min_size,
        "epochs": best.epochs_used,
        "groups": best.group_count,
        "weeks": analytics.epochs_to_weeks(best.epochs_used),
    }


def _pre_experiment_job(args):
    config, generations, backend = args
    try:
        _, results = run_pre_experiment(config, generations, backend)
    except Exception as exc:
        raise SimulationError(f"experiment {config_code(config)} failed: {exc}") from exc
    return results


@dataclass(eq=False)
class MatrixResult:
    configs: list[ExperimentConfig]
    results: list[list[GenerationResult]]  # every generation, per config

    @property
    def best(self) -> list[GenerationResult]:
        return [best_by_mse(rs) for rs in self.results]

    @property
    def rows(self) -> list[dict]:
        return [summary_row(i + 1, c, b) for i, (c, b) in enumerate(zip(self.configs, self.best))]

    def by_code(self) -> dict[str, GenerationResult]:
        return {config_code(c): b for c, b in zip(self.configs, self.best)}


def run_matrix(
    base: TuningDefaults | None = None,
    seed: int = 0,
    jobs: int = 1,
    generations: int = GENERATIONS,
    backend: str = "numba",
    **overrides,
) -> MatrixResult:
    """All 16 configurations, best generation of each, in results-table order."""
    configs = matrix_configs(base, seed, **overrides)
    work = [(c, generations, backend) for c in configs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_pre_experiment_job, work))
    else:
        results = [_pre_experiment_job(w) for w in work]
    return MatrixResult(configs, results)
