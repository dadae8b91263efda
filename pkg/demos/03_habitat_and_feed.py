"""
Crowding, water quality and where the feed lands
================================================

Cell quality comes from how many shrimp stand nearby.  Feed is thrown
around one, two or three feeders, or spread over the whole pond.
"""

# %%
import numpy as np

from aquasim.config import Disposition
from aquasim.habitat import HabitatGrid, drop_feed, feeder_positions, recompute_quality, render_frame

rng = np.random.default_rng(1)
W = H = 60

# %%
for d in Disposition:
    print(d.name, feeder_positions(d, W, H, spread_radius=10))

# %%
# Pile 40 shrimp in one corner and a few elsewhere.
xs = np.concatenate([rng.integers(5, 9, 40), rng.integers(0, W, 30)])
ys = np.concatenate([rng.integers(5, 9, 40), rng.integers(0, H, 30)])
grid = recompute_quality(HabitatGrid.empty(W, H, ((8, 7.5, 26), (6, 7, 28), (4.5, 7, 28), (3.5, 6, 28))),
                         xs, ys, (2, 5, 9))
print("cells per quality (Bad..Good):", np.bincount(grid.quality.ravel(), minlength=4))

# %%
feed = drop_feed(Disposition.TwoZones, 120, rng, W, H, spread_radius=10)
frame = render_frame(grid, np.column_stack([xs, ys]), feed)
print("\n".join(frame.splitlines()[:30]))
