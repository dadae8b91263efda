"""
Ten generations and the best crop
=================================

The pre-experiment evolves the population for ten crops and keeps the one
whose growth curve is closest to a straight line.
"""

# %%
from aquasim.config import Density, Disposition, ExperimentConfig, FeedingMode, TuningDefaults
from aquasim.engine import run_pre_experiment

cfg = ExperimentConfig(Disposition.ThreeZones, FeedingMode.Normal, Density.SemiIntensive, rng_seed=11)
best, results = run_pre_experiment(cfg)
for r in results:
    print(f"gen {r.generation_index}: {r.epochs_used:4d} epochs, mse {r.mse:8.4f}, "
          f"fitness variance {r.fitness_variance:.4f}")
print("best generation:", best.generation_index)

# %%
# Switch mutation off and the population never diversifies.
plain = ExperimentConfig(cfg.disposition, cfg.feeding_mode, cfg.density, rng_seed=11,
                         tuning=TuningDefaults(mutation_sigma=0.0))
_, frozen = run_pre_experiment(plain, generations=4)
print([r.fitness_variance for r in frozen])
