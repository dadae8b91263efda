"""
How a shrimp feels about its water
==================================

Each cell of the pond carries dissolved oxygen, pH and temperature.  The
fuzzy layer turns those three numbers into one of three states, and the
state decides how far and how keenly the shrimp moves.
"""

# %%
from aquasim.fuzzy import OXYGEN, PH, TEMPERATURE, evaluate, membership_optimal, rule_strengths

# %%
# Membership in the optimal set is a trapezoid: flat at 1 inside the
# optimal range, flat at 0 well outside, linear across a short ramp.
for o2 in (3.0, 4.3, 4.65, 5.0, 5.35, 5.7, 8.0):
    print(f"O2 {o2:5.2f} ppm -> optimal {membership_optimal(OXYGEN, o2):.2f}")

# %%
# The four water qualities of the grid, from clean to crowded.
waters = {"Good": (8, 7.5, 26), "Medium": (6, 7, 28), "Tolerable": (4.5, 7, 28), "Bad": (3.5, 6, 28)}
for name, params in waters.items():
    s = evaluate(*params)
    print(f"{name:9s} {params} -> {s.label.name:9s} (crisp {s.crisp:.2f})")

# %%
# Under the hood: eight rules fire with min-strength, then a weighted
# average of their output levels gives the crisp value.
mus = [membership_optimal(u, x) for u, x in zip((OXYGEN, PH, TEMPERATURE), (4.5, 7, 28))]
print([round(s, 2) for s in rule_strengths(*[(m, 1 - m) for m in mus])])

# %%
# A shrimp with a wider tolerance is harder to stress.
hardy = ((3.0, 12.0), (5.5, 8.5), (22.0, 30.0))
print(evaluate(3.5, 6, 28).label.name, "->", evaluate(3.5, 6, 28, tolerance=hardy).label.name)
