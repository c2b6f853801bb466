# %% [markdown]
# # Polynomial minorants
#
# With integer masses the polynomial `f = e^{c0 - 1/d} prod (z - a_k)^{m_k}`
# satisfies `ln|f| = u - 1/d`, so every check passes. Fractional masses are
# rounded first, and the points where the rounded minorant overshoots are
# counted rather than hidden.

# %%
import numpy as np

from logminorant import (
    AtomicMassDistribution,
    LogPotentialFunction,
    PowerRadius,
    atomize_measure,
    construct_minorant,
    verify_means,
    verify_pointwise,
    verify_radial_growth,
)

x = np.linspace(-2, 2, 120) + 0.0037
X, Y = np.meshgrid(x, x + 0.0051)
grid = (X + 1j * Y).ravel()
r = PowerRadius(0.5, 1.0)

u = LogPotentialFunction.from_atoms([(1, 0, 2), (-1, 0.5, 1), (0, -1, 3)], c0=0.4)
f = construct_minorant(u, d=1.0)
print("coefficients:", np.round(f.coefficients(), 4))
print("pointwise violations:", verify_pointwise(u, f, grid).size)
print("means:", verify_means(u, f, r, grid))
print("radial growth:", verify_radial_growth(u, f, r, [1, 2, 5, 10]).passed)

# %%
rng = np.random.default_rng(4)
mu = AtomicMassDistribution(1.5 * (rng.random(15) - 0.5 + 1j * (rng.random(15) - 0.5)),
                            rng.uniform(0.2, 2.5, 15))
u = LogPotentialFunction(0.0, mu)
nu = atomize_measure(mu)
f = construct_minorant(LogPotentialFunction(0.0, nu), d=1.0)
bad = verify_pointwise(u, f, grid)
print(f"mass {mu.total_mass:.3f} -> {nu.total_mass:.0f}; pointwise violations {bad.size} of {grid.size}")
print("means:", verify_means(u, f, r, grid))
