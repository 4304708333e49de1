"""
Exact and macroscopic densities in time
=======================================

An equal mix of neighbouring levels sloshes back and forth at the
classical frequency.  The macroscopic density keeps only the slow envelope.
"""

# %%
import math

import numpy as np

from macroqho import NATURAL, Superposition, default_window, density_matrix_xt, local_average, macroscopic_density_xt

state = Superposition({100: 1, 99: 1})
xn = NATURAL.amplitude(100)
x = np.linspace(-0.6 * xn, 0.6 * xn, 7)

for t in np.linspace(0, math.pi, 3):
    exact = [local_average(lambda y: density_matrix_xt(state, y, t), xi, default_window(100, xi)) for xi in x]
    macro = macroscopic_density_xt(state, x, t)
    print(f"t={t:.3f}  averaged exact: {np.round(exact, 4)}")
    print(f"         macroscopic:    {np.round(macro, 4)}")

# %%
# The centroid of the exact density follows ``sqrt(n/2) cos t``.
grid = np.linspace(-1.5 * xn, 1.5 * xn, 3001)
for t in (0.0, 1.0, 2.0):
    centroid = np.trapezoid(grid * density_matrix_xt(state, grid, t), grid)
    print(f"t={t}: centroid {centroid:+.6f}, sqrt(50) cos t = {math.sqrt(50) * math.cos(t):+.6f}")
