"""
Chromosomes, tournaments and crossover
======================================

A generation starts from clones of the species.  Tournaments favour the
shrimp that grew most, crossover swaps whole tolerance pairs, and a small
Gaussian mutation keeps the population from staying identical forever.
"""

# %%
import numpy as np

from aquasim.genome import crossover, fitness, next_generation, spawn_initial_population, tournament_select

rng = np.random.default_rng(0)
pop = spawn_initial_population(8)
print(pop[0])
print("fitness of a newborn:", fitness(pop[0]))

# %%
# Pretend the crop grew unevenly; size enters fitness directly.
grown = [c.grown(int(s)) for c, s in zip(pop, rng.integers(5, 38, len(pop)))]
print("sizes  ", [c.size for c in grown])
winners = tournament_select(grown, 3, rng)
print("parents", [c.size for c in winners])

# %%
# Without mutation every child pair is copied from a parent, bit for bit.
a, b = grown[0], grown[1]
child = crossover(a, b, rng)
print(child.tolerance == a.tolerance or child.tolerance == b.tolerance, child.size)

# %%
# With mutation the tolerance ranges start to drift apart.
gen = grown
for g in range(5):
    gen = next_generation([c.grown(int(rng.integers(5, 38))) for c in gen], rng, mutation_sigma=0.05)
    print(g, "fitness spread", round(float(np.ptp([fitness(c) for c in gen])), 3))
