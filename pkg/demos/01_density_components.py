"""
Coordinate components of the density matrix
============================================

The coordinate components ``rho_{n,m}(x) = psi_n(x) psi_m(x)`` carry the
populations (``n = m``) and the coherences (``n != m``) of an oscillator
state.  Here we tabulate a few of them in natural units and look at how
wild they get as ``n`` grows.
"""

# %%
import numpy as np

from macroqho import NATURAL, density_component

x = np.linspace(-6, 6, 1201)
for m in (1, 10, 20):
    rho = density_component(1, m, x)
    print(f"n=1, m={m:>2}: max|rho|={np.abs(rho).max():.4f}  integral={np.trapezoid(rho, x):+.2e}")

# %%
# At ``n = 100`` the components live on ``|x| < x_100 ~ 14.2`` and oscillate
# on a scale of the local de Broglie wavelength.  Count the sign changes as
# a crude measure of that.
x = np.linspace(-1.2 * NATURAL.amplitude(150), 1.2 * NATURAL.amplitude(150), 4001)
for m in (100, 125, 150):
    rho = density_component(100, m, x)
    s = np.sign(rho[np.abs(rho) > 1e-12])
    print(f"n=100, m={m}: sign changes={np.count_nonzero(s[1:] != s[:-1])}, max|rho|={np.abs(rho).max():.4f}")

# %%
# The same data, written to CSV the way a plotting script would consume it:
#
#   macroqho density --n 1 --m 1 10 20 --grid=-6:6:1201 --out small_n.csv
#   macroqho density --n 100 --m 100 125 150 --out large_n.csv
