"""
Local averages approach the classical density
=============================================

Averaging ``|psi_n|^2`` over a few local wavelengths washes out the quantum
ripples and leaves the arcsine law ``1 / (pi sqrt(x_n^2 - x^2))`` of a
classical oscillator with the same energy.
"""

# %%
import numpy as np

from macroqho import NATURAL, classical_density, default_window, density_component, local_average


def worst_error(n, points=101, k=3):
    xn = NATURAL.amplitude(n)
    errs = []
    for x in np.linspace(-0.75 * xn, 0.75 * xn, points):
        avg = local_average(lambda y: density_component(n, n, y), x, default_window(n, x, k))
        errs.append(abs(avg / classical_density(n, x) - 1))
    return max(errs)


for n in (10, 50, 100, 500, 1000):
    print(f"n={n:>5}: window at x=0 is {default_window(n, 0.0).epsilon:.4f}, max rel err {worst_error(n):.4f}")

# %%
# Fourier side of the same story: the exact coefficients approach Bessel
# functions.
from macroqho import fourier_asymptotic, fourier_exact, momentum_from_xi0

p = momentum_from_xi0(np.linspace(-4, 4, 801))
for n in (50, 500, 5000):
    errs = [np.abs(fourier_exact(n, n - v, p) - fourier_asymptotic(n, v, p)).max() for v in (0, 1, 2)]
    print(f"n={n:>5}: " + "  ".join(f"v={v}: {e:.4f}" for v, e in enumerate(errs)))
