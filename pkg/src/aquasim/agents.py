"""Shrimp behaviour: smelling, hunting, exploring, eating and stress."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import MutableMapping, Sequence

import numpy as np

from .config import MAX_SIZE
from .fuzzy import Label
from .genome import Chromosome
from .habitat import HabitatGrid, QualityLevel

# east, west, south, north; exploration picks among these in this order
CARDINAL = ((1, 0), (-1, 0), (0, 1), (0, -1))
STRESS_MULTIPLIER = {Label.Normal: 1.0, Label.Tolerable: 0.5, Label.Bad: 0.25}


class Mode(enum.Enum):
    Exploratory = "exploratory"
    Hunting = "hunting"


class ConsistencyError(RuntimeError):
    """Raised when the world state contradicts an agent action."""


@dataclass
class ShrimpAgent:
    id: int
    x: int
    y: int
    chromosome: Chromosome
    size: int = 1
    feed_count: int = 0
    state: Label = Label.Normal
    mode: Mode = Mode.Exploratory
    target: int | None = None

    @property
    def position(self) -> tuple[int, int]:
        return (self.x, self.y)


def apply_state(state: Label, displacement: int, smell: float) -> tuple[int, float]:
    """Effective (displacement, smell radius) under stress; displacement floors at 1."""
    m = STRESS_MULTIPLIER[Label(state)]
    return max(1, math.floor(displacement * m)), smell * m


def sense_food(position: tuple[int, int], pellets: MutableMapping[int, tuple[int, int]], radius: float) -> int | None:
    """Id of the nearest pellet within ``radius`` (Euclidean), lowest id on ties."""
    if not pellets:
        return None
    ids = np.fromiter(pellets.keys(), dtype=np.int64, count=len(pellets))
    xy = np.array(list(pellets.values()), dtype=np.int64).reshape(-1, 2)
    d = np.hypot(xy[:, 0] - position[0], xy[:, 1] - position[1])
    inside = d <= radius
    if not inside.any():
        return None
    d, ids = d[inside], ids[inside]
    order = np.lexsort((ids, d))
    return int(ids[order[0]])


def hunt_step(position: tuple[int, int], target: tuple[int, int], steps: int) -> tuple[int, int]:
    """Close in on ``target``, adjusting both coordinates by one per step."""
    x, y = position
    tx, ty = target
    for _ in range(steps):
        if (x, y) == (tx, ty):
            break
        x += (tx > x) - (tx < x)
        y += (ty > y) - (ty < y)
    return (x, y)


def explore_step(position: tuple[int, int], grid: HabitatGrid, steps: int, draws) -> tuple[int, int]:
    """Random axis-aligned walk of ``steps`` unit moves that avoids Bad cells.

    ``draws`` is either a :class:`numpy.random.Generator` or a sequence of at
    least ``steps`` uniforms in [0, 1).  Each step picks uniformly among the
    in-grid cardinal neighbours that are not Bad, or among all in-grid
    neighbours if every one of them is Bad.
    """
    if isinstance(draws, np.random.Generator):
        draws = draws.random(steps)
    x, y = position
    for s in range(steps):
        inside = [(x + dx, y + dy) for dx, dy in CARDINAL if grid.in_bounds(x + dx, y + dy)]
        ok = [c for c in inside if grid.quality[c] != QualityLevel.Bad]
        choices = ok or inside
        x, y = choices[int(draws[s] * len(choices))]
    return (x, y)


def eat(agent: ShrimpAgent, pellet_id: int, pellets: MutableMapping[int, tuple[int, int]], growth_pellets_per_gram: int = 3) -> None:
    """Consume a pellet on the agent's cell; one gram per ``growth_pellets_per_gram`` eaten."""
    pos = pellets.get(pellet_id)
    if pos is None:
        raise ConsistencyError(f"agent {agent.id} tried to eat absent pellet {pellet_id}")
    if tuple(pos) != agent.position:
        raise ConsistencyError(f"agent {agent.id} at {agent.position} is not on pellet {pellet_id} at {pos}")
    del pellets[pellet_id]
    agent.feed_count += 1
    if agent.feed_count >= growth_pellets_per_gram:
        agent.feed_count = 0
        agent.size = min(agent.size + 1, MAX_SIZE)
    agent.mode = Mode.Exploratory
    agent.target = None


def act(
    agent: ShrimpAgent,
    grid: HabitatGrid,
    pellets: MutableMapping[int, tuple[int, int]],
    draws: Sequence[float],
    state: Label,
    growth_pellets_per_gram: int,
) -> bool:
    """One decide-move-eat turn. Returns True if the agent ate."""
    agent.state = state
    disp, smell = apply_state(state, agent.chromosome.displacement, agent.chromosome.smell)
    target = sense_food(agent.position, pellets, smell)
    if target is None:
        agent.mode, agent.target = Mode.Exploratory, None
        agent.x, agent.y = explore_step(agent.position, grid, disp, draws)
        return False
    agent.mode, agent.target = Mode.Hunting, target
    agent.x, agent.y = hunt_step(agent.position, pellets[target], disp)
    if agent.position == tuple(pellets[target]):
        eat(agent, target, pellets, growth_pellets_per_gram)
        return True
    return False
