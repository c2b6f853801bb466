# %% [markdown]
# # Largest-first disk selection and its overlap
#
# From a family of disks the greedy selector keeps a disk only if its center is
# not yet covered. The selected family still covers every center, and its
# pointwise overlap is audited against the bound 19.

# %%
import numpy as np

from logminorant import RadiusAssignment, audit_multiplicity, besicovitch_select
from logminorant.covering import multiplicities

rng = np.random.default_rng(2)
for n in (10, 100, 1000, 5000):
    a = RadiusAssignment(rng.random(n) + 1j * rng.random(n), rng.uniform(0.01, 0.05, n))
    sel = besicovitch_select(a)
    probes = rng.random(10_000) + 1j * rng.random(10_000)
    worst = audit_multiplicity(sel, probes)
    covered = np.all(multiplicities(sel, a.points) >= 1)
    print(f"n={n:5d} selected={len(sel):5d} covers centers={covered} max overlap={worst}")

# %% [markdown]
# Heavy-tailed radii stress the selector more than uniform ones.

# %%
n = 3000
a = RadiusAssignment(rng.normal(size=n) + 1j * rng.normal(size=n), 0.01 * rng.pareto(1.5, n) + 1e-3)
sel = besicovitch_select(a)
print(f"pareto radii: selected {len(sel)}, max overlap {audit_multiplicity(sel, a.points)}")
