"""
Simulated growth next to farm records
=====================================

Farm data is not shipped; this builds a fake 7-column record set, writes a
simulated trajectory and runs ``aquasim compare`` on both.
"""

# %%
import json
import tempfile
from pathlib import Path

import numpy as np

from aquasim.cli import main

rng = np.random.default_rng(4)
tmp = Path(tempfile.mkdtemp())

# %%
# Two ponds, 21 weeks each, roughly 1.1 g a week plus noise.
with open(tmp / "history.csv", "w") as fh:
    fh.write("pond,week,weight,density,feed_kg,o2,temp\n")
    for pond in ("P01", "P02"):
        for week in range(22):
            w = 1 + 1.1 * week + rng.normal(0, 0.4)
            fh.write(f"{pond},{week},{w:.2f},{rng.uniform(80, 120):.0f},0,0,0\n")

# %%
with open(tmp / "trajectory.csv", "w") as fh:
    fh.write("epoch,mean_size\n")
    for e in range(1, 288):
        fh.write(f"{e},{1 + 0.08 * e + rng.normal(0, 0.2):.4f}\n")

# %%
code = main(["compare", str(tmp / "trajectory.csv"), str(tmp / "history.csv"), "--out", str(tmp / "cmp.json")])
res = json.loads((tmp / "cmp.json").read_text())
print("exit", code)
print(json.dumps(res, indent=1))

# %%
# Put both lines on the week axis.
per_week = res["epochs_per_week"]
print(f"simulated {res['simulated']['slope'] * per_week:.2f} g/week vs "
      f"historical {res['historical']['slope']:.2f} g/week")
