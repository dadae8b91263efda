"""
All sixteen configurations
==========================

Three zoned layouts plus uniform feeding, two feeding rates, two stocking
densities.  This runs the full matrix on a smaller pond so it finishes in
well under a minute; drop the overrides for the real thing (or use
``aquasim matrix --seed N --out DIR``).
"""

# %%
import time

from aquasim import analytics
from aquasim.config import TuningDefaults
from aquasim.engine import run_matrix

t0 = time.time()
m = run_matrix(TuningDefaults(feeder_spread_radius=12), seed=2, generations=3,
               grid_width=60, grid_height=60, population_size=120)
print(f"{time.time() - t0:.0f} s")

# %%
print(f"{'#':>2} {'config':8} {'epochs':>6} {'weeks':>6} {'mse':>8} {'std':>6} {'min':>4} {'max':>4}")
for row in m.rows:
    print(f"{row['exp_no']:2d} {row['config']:8} {row['epochs']:6d} {row['weeks']:6.1f} {row['mse']:8.4f} "
          f"{row['std']:6.2f} {row['min_size']:4d} {row['max_size']:4d}")

# %%
rows = {r["config"]: r for r in m.rows}
fastest = min(m.rows, key=lambda r: r["epochs"])
slowest = max(m.rows, key=lambda r: r["epochs"])
print(f"fastest {fastest['config']}, slowest {slowest['config']}")
print(analytics.time_saving(slowest["epochs"], fastest["epochs"]))
