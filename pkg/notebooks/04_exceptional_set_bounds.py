# %% [markdown]
# # The exceptional set and its content bounds
#
# Points where the Jensen defect over radius `p(z)` exceeds `1/d` form the
# exceptional set. They are covered by disks of their smallest bad radius,
# thinned by largest-first selection. The cover weight is then compared with
# the 60-integral over nearby atoms and with `sup_S r`.

# %%
import numpy as np

from logminorant import AtomicMassDistribution, PowerRadius, build_p, exceptional_cover_and_check
from logminorant.exceptional import sample_search_region

rng = np.random.default_rng(3)
n = 50
mu = AtomicMassDistribution(np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n)),
                            3.0 * (1 - rng.random(n)))
r = PowerRadius(0.5, 1.0)

# %%
for d in (0.5, 1.0, 2.0):
    p = build_p(r, mu, d, l=1.0)
    S = sample_search_region(mu, p.sup, 40, rng)
    res = exceptional_cover_and_check(mu, p, d, S, r)
    print(f"d={d}: P={p.P:.3f} sup p={p.sup:.3e} flagged={res.sample.points.size:5d} "
          f"disks={len(res.cover):4d} lhs={res.lhs_weight:.3e} <= rhs1={res.rhs_theorem1:.3e} "
          f"<= rhs2={res.rhs_theorem2:.3f} overlap={res.max_multiplicity} verdict={res.verdict}")
