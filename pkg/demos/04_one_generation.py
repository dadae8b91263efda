"""
Growing one crop
================

A single generation: feed on schedule, refresh water quality, let every
shrimp sense, move and eat, until the average shrimp weighs 24 g.
"""

# %%
import numpy as np

from aquasim import analytics
from aquasim.config import Density, Disposition, ExperimentConfig, FeedingMode
from aquasim.engine import run_generation
from aquasim.genome import spawn_initial_population

cfg = ExperimentConfig(Disposition.Uniform, FeedingMode.Alta, Density.Intensive, rng_seed=3)
print(cfg.code, "population", cfg.population_size, "pellets per drop", cfg.pellets_per_drop())

# %%
frames = []
res = run_generation(cfg, spawn_initial_population(cfg.population_size),
                     frame_every=100, frame_sink=lambda e, text: frames.append((e, text)))
print(res.summary())
print(f"{res.epochs_used} epochs is about {analytics.epochs_to_weeks(res.epochs_used):.1f} weeks")

# %%
# Growth is close to linear; the MSE measures how close.
line = analytics.linear_regression(res.trajectory)
print(f"slope {line.slope:.4f} g/epoch, intercept {line.intercept:.2f} g, mse {res.mse:.4f}")

# %%
# Final weights, 1 g bins.
for lo, n in enumerate(res.histogram):
    if n:
        print(f"{lo:2d}-{lo + 1:2d} g {'#' * int(np.ceil(n / 5))} {n}")

# %%
epoch, text = frames[0]
print(f"epoch {epoch}, top-left corner:")
print("\n".join(row[:50] for row in text.splitlines()[:20]))
