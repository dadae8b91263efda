import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aquasim.genome import (Chromosome, GenomeError, crossover, fitness, next_generation,
                            spawn_initial_population, tournament_select)

SPECIES = ((5.0, 12.0), (6.5, 8.5), (22.0, 30.0))


def chrom(o2=(5, 12), ph=(6.5, 8.5), t=(22, 30), d=1, s=6.0, size=1):
    return Chromosome((o2, ph, t), displacement=d, smell=s, size=size)


def test_fitness_examples():
    assert fitness(chrom(d=1, s=5, size=1)) == pytest.approx(24)
    assert fitness(chrom((5, 5), (7, 7), (25, 25), 0, 0, 0)) == 0
    assert fitness(chrom((5, 12), (7, 7), (25, 25), 0, 0, 0)) == 7


def test_invariants_enforced():
    with pytest.raises(GenomeError):
        chrom(o2=(12, 5))
    with pytest.raises(GenomeError):
        chrom(t=(15, 30))


@given(st.one_of(st.just(0.0), st.floats(0.01, 2)), st.integers(0, 3), st.sampled_from([0, 1, 2]))
def test_fitness_monotone(widen, extra, which):
    base = chrom(o2=(6, 11), ph=(7, 8), t=(23, 29), d=1, s=6, size=5)
    tol = list(base.tolerance)
    lo, hi = tol[which]
    tol[which] = (lo, hi + widen * 0.5)
    wider = Chromosome(tuple(tol), 1 + extra, 6.0, 5)
    assert fitness(wider) >= fitness(base)
    if widen > 0 or extra > 0:
        assert fitness(wider) > fitness(base)


def test_spawn_homogeneous():
    pop = spawn_initial_population(500)
    assert len(pop) == 500 and len(set(pop)) == 1
    assert pop[0].tolerance == SPECIES and pop[0].size == 1
    assert len({fitness(c) for c in pop}) == 1
    assert len(spawn_initial_population(1)) == 1
    with pytest.raises(GenomeError):
        spawn_initial_population(0)


def test_tournament_argmax_and_ties(rng):
    pop = [chrom(size=10), chrom(size=20), chrom(size=30)]
    # k larger than the draws needed: every tournament almost surely contains index 2
    winners = tournament_select(pop, 50, rng, n_parents=20)
    assert all(w.size == 30 for w in winners)
    same = [chrom(size=7)] * 4
    assert tournament_select(same, 4, rng, n_parents=3) == [same[0]] * 3
    with pytest.raises(GenomeError, match="empty population"):
        tournament_select([], 3, rng)


def test_tournament_tie_goes_to_lowest_index():
    a = chrom(size=5)
    b = Chromosome(a.tolerance, a.displacement, a.smell + 0.0, 5)
    pop = [a, b]
    # equal fitness: the winner must be index 0 whenever it is drawn
    class FixedRng:
        def integers(self, lo, hi, size):
            return np.array([[1, 0]] * size[0])
    assert tournament_select(pop, 2, FixedRng(), n_parents=1)[0] is a


def test_tournament_k1_is_uniform():
    pop = [chrom(size=s) for s in range(1, 7)]
    picks = tournament_select(pop, 1, np.random.default_rng(3), n_parents=60000)
    counts = np.bincount([p.size for p in picks], minlength=7)[1:]
    assert np.all(np.abs(counts - 10000) < 4 * np.sqrt(10000 * 5 / 6))


def test_tournament_reproducible():
    pop = [chrom(size=s) for s in range(1, 7)]
    a = tournament_select(pop, 3, np.random.default_rng(9))
    b = tournament_select(pop, 3, np.random.default_rng(9))
    assert a == b


def test_winner_not_below_tournament_median():
    pop = [chrom(size=s) for s in (3, 9, 1, 20, 4, 11, 7)]
    scores = np.array([fitness(c) for c in pop])
    rng = np.random.default_rng(4)
    draws = np.random.default_rng(4).integers(0, len(pop), size=(14, 3))
    winners = tournament_select(pop, 3, rng)
    for row, w in zip(draws, winners):
        assert fitness(w) >= np.median(scores[row])


def test_crossover_identical_parents(rng):
    a = chrom(o2=(4, 12))
    child = crossover(a, a, rng)
    assert child.tolerance == a.tolerance


def test_crossover_pairs_never_split():
    a = chrom(o2=(4, 12), ph=(6, 8), t=(21, 31))
    b = chrom(o2=(5, 13), ph=(7, 9), t=(23, 29))
    rng = np.random.default_rng(0)
    seen = set()
    for _ in range(400):
        c = crossover(a, b, rng)
        assert c.tolerance[0] in {(4, 12), (5, 13)}
        for k in range(3):
            assert c.tolerance[k] in {a.tolerance[k], b.tolerance[k]}
        seen.add(c.tolerance)
    assert len(seen) == 8  # all coin outcomes occur


def test_crossover_resets_properties(rng):
    a = chrom(d=3, s=9, size=30)
    b = chrom(d=2, s=8, size=25)
    c = crossover(a, b, rng, displacement=1, smell=6.0)
    assert (c.size, c.displacement, c.smell) == (1, 1, 6.0)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_mutation_keeps_invariants(seed):
    rng = np.random.default_rng(seed)
    a = chrom(o2=(0.1, 13.9), ph=(0, 14), t=(18.2, 35.9))
    c = crossover(a, a, rng, mutation_sigma=0.5)
    for (lo, hi), (ulo, uhi) in zip(c.tolerance, ((0, 14), (0, 14), (18, 36))):
        assert ulo <= lo <= hi <= uhi


def test_homogeneous_population_stays_homogeneous_without_mutation(rng):
    pop = [c.grown(s) for c, s in zip(spawn_initial_population(40), range(1, 41))]
    for _ in range(5):
        pop = next_generation(pop, rng, mutation_sigma=0.0)
        assert len({c.tolerance for c in pop}) == 1
        pop = [c.grown(s) for c, s in zip(pop, rng.integers(1, 39, len(pop)))]


def test_mutation_diversifies(rng):
    pop = spawn_initial_population(40)
    pop = next_generation(pop, rng, mutation_sigma=0.05)
    assert len({c.tolerance for c in pop}) > 1
