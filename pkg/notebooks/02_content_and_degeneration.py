# %% [markdown]
# # Variable-radius Hausdorff content
#
# The greedy cover gives an upper bound with an explicit witness. Below
# dimension 2 the weight of a planar cloud grows as the radius shrinks;
# above dimension 2 it tends to zero.

# %%
import numpy as np

from logminorant import PowerRadius, ball_coefficient, content_upper_bound

rng = np.random.default_rng(1)
square = rng.random(10_000) + 1j * rng.random(10_000)

for d in (0, 1, 2, 2.5):
    print(f"coefficient d={d}: {ball_coefficient(d):.6f}")

# %%
print(f"{'r':>10} {'d=1.5':>12} {'d=2':>12} {'d=2.5':>12}")
for k in range(1, 13):
    r = 2.0**-k
    row = [content_upper_bound(square, d, r)[0].weight for d in (1.5, 2.0, 2.5)]
    print(f"{r:10.6f} " + " ".join(f"{w:12.4e}" for w in row))

# %% [markdown]
# A radius bound that varies with position: the cover obeys it disk by disk,
# and the witness stays valid for any larger bound.

# %%
r = PowerRadius(0.2, 1.0)
value, cover = content_upper_bound(square * 4, 1.0, r)
print(f"{len(cover)} disks, weight {value.weight:.4f}, respects r: {cover.respects(r)}")
print("valid under 2r:", cover.respects(PowerRadius(0.4, 1.0)) and cover.covers(square * 4).all())
