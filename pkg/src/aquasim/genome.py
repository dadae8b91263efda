"""Shrimp chromosomes and the genetic operators of the generation loop."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .config import MIN_SIZE
from .fuzzy import UNIVERSES

Pair = tuple[float, float]


class GenomeError(ValueError):
    pass


@dataclass(frozen=True)
class Chromosome:
    """Tolerance segment (oxygen, pH, temperature pairs) plus acquired properties."""

    tolerance: tuple[Pair, Pair, Pair]
    displacement: int = 1
    smell: float = 6.0
    size: int = MIN_SIZE

    def __post_init__(self):
        tol = tuple((float(a), float(b)) for a, b in self.tolerance)
        if len(tol) != 3:
            raise GenomeError("tolerance segment needs exactly three (min, max) pairs")
        for (lo, hi), u in zip(tol, UNIVERSES):
            if lo > hi:
                raise GenomeError(f"{u.name} tolerance has min > max: ({lo}, {hi})")
            if lo < u.lo or hi > u.hi:
                raise GenomeError(f"{u.name} tolerance ({lo}, {hi}) outside [{u.lo}, {u.hi}]")
        object.__setattr__(self, "tolerance", tol)

    def grown(self, size: int) -> Chromosome:
        return replace(self, size=int(size))


def species_tolerance() -> tuple[Pair, Pair, Pair]:
    return tuple((u.opt_lo, u.opt_hi) for u in UNIVERSES)


def fitness(c: Chromosome) -> float:
    """Sum of the three tolerance widths plus displacement, smell and size."""
    widths = sum(hi - lo for lo, hi in c.tolerance)
    return widths + c.displacement + c.smell + c.size


def spawn_initial_population(n: int, displacement: int = 1, smell: float = 6.0) -> list[Chromosome]:
    """A homogeneous population: species optimal ranges, default properties, 1 g."""
    if n < 1:
        raise GenomeError("population size must be >= 1")
    proto = Chromosome(species_tolerance(), displacement=displacement, smell=smell, size=MIN_SIZE)
    return [proto] * n


def tournament_select(
    pop: Sequence[Chromosome],
    k: int,
    rng: np.random.Generator,
    n_parents: int | None = None,
) -> list[Chromosome]:
    """Tournament selection.

    Each tournament draws ``k`` members at random (independently, so a member
    may appear in many tournaments) and keeps the fittest; ties go to the
    lowest population index.  By default ``2 * len(pop)`` parents are returned,
    i.e. one consecutive pair per offspring.
    """
    if len(pop) == 0:
        raise GenomeError("empty population")
    if k < 1:
        raise GenomeError("tournament size must be >= 1")
    n = len(pop)
    if n_parents is None:
        n_parents = 2 * n
    scores = np.array([fitness(c) for c in pop])
    draws = rng.integers(0, n, size=(n_parents, k))
    best = scores[draws].max(axis=1, keepdims=True)
    winners = np.where(scores[draws] == best, draws, n).min(axis=1)
    return [pop[i] for i in winners]


def crossover(
    a: Chromosome,
    b: Chromosome,
    rng: np.random.Generator,
    mutation_sigma: float = 0.0,
    displacement: int = 1,
    smell: float = 6.0,
) -> Chromosome:
    """Pair-wise crossover of the tolerance segment.

    Every (min, max) pair is inherited whole from one parent by a fair coin.
    Acquired properties are not inherited; the offspring starts at species
    defaults and 1 g.  With ``mutation_sigma > 0`` each bound then gets
    Gaussian noise of ``mutation_sigma * optimal width`` and is clamped and
    re-ordered.
    """
    coins = rng.random(3) < 0.5
    tol = [pa if c else pb for pa, pb, c in zip(a.tolerance, b.tolerance, coins)]
    if mutation_sigma > 0:
        noise = rng.normal(0.0, 1.0, size=(3, 2))
        mutated = []
        for (lo, hi), u, z in zip(tol, UNIVERSES, noise):
            sigma = mutation_sigma * (u.opt_hi - u.opt_lo)
            lo = min(max(lo + sigma * z[0], u.lo), u.hi)
            hi = min(max(hi + sigma * z[1], u.lo), u.hi)
            mutated.append((min(lo, hi), max(lo, hi)))
        tol = mutated
    return Chromosome(tuple(tol), displacement=displacement, smell=smell, size=MIN_SIZE)


def next_generation(
    pop: Sequence[Chromosome],
    rng: np.random.Generator,
    tournament_size: int = 3,
    mutation_sigma: float = 0.0,
    displacement: int = 1,
    smell: float = 6.0,
) -> list[Chromosome]:
    """Full generational replacement: tournaments, then one child per parent pair."""
    parents = tournament_select(pop, tournament_size, rng)
    return [
        crossover(parents[2 * i], parents[2 * i + 1], rng, mutation_sigma, displacement, smell)
        for i in range(len(pop))
    ]
