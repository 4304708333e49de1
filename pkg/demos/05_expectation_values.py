"""
Expectation values: exact and asymptotic
========================================

With Chebyshev moments the asymptotic expectation of a polynomial
observable needs only offsets up to its degree.  Its time average is the
classical value.
"""

# %%
import math

import numpy as np

from macroqho import (
    POSITION,
    POSITION_SQUARED,
    Superposition,
    classical_expectation,
    expectation_asymptotic,
    expectation_exact,
)

state = Superposition({100: 1, 99: 1})
t = np.linspace(0, 2 * math.pi, 9)
print("exact      <x>:", np.round(expectation_exact(state, POSITION, t), 5))
print("asymptotic <x>:", np.round(expectation_asymptotic(state, POSITION, t), 5))

# %%
# Truncating the offset sum at the polynomial degree is exact.
wide = Superposition.gaussian(300, 4)
for obs, d in ((POSITION, 1), (POSITION_SQUARED, 2)):
    a = expectation_asymptotic(wide, obs, t, vmax=d)
    b = expectation_asymptotic(wide, obs, t, vmax=d + 5)
    print(f"{obs.name}: vmax={d} vs {d + 5}: max diff {np.abs(a - b).max():.1e}")

# %%
# Averaging over a period leaves the classical term.
ts = np.arange(64) * 2 * math.pi / 64
print(np.mean(expectation_asymptotic(wide, POSITION_SQUARED, ts)), classical_expectation(wide, POSITION_SQUARED))
