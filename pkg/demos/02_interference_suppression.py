"""
Suppressed interference at large quantum numbers
================================================

For large ``n`` the off-diagonal components, seen through a local average,
collapse onto ``T_v(x/chi) / (pi sqrt(chi^2 - x^2))`` times a prefactor
close to one.  At ``n = 10000`` their size in the interior is below 0.01
while the number of sign changes grows with the offset ``v``.
"""

# %%
import numpy as np

from macroqho import AsymptoticIndex, density_asymptotic

n = 10000
for v in (1, 2, 50, 100):
    idx = AsymptoticIndex(n, v)
    chi = idx.chi()
    x = np.linspace(-chi, chi, 4001)[1:-1]
    rho = density_asymptotic(n, v, x)
    interior = np.abs(x) <= 0.75 * chi
    s = np.sign(rho[rho != 0])
    print(
        f"v={v:>3}: chi={chi:8.3f} prefactor={idx.prefactor:.6f} "
        f"max|rho| (|x|<=0.75chi)={np.abs(rho[interior]).max():.5f} sign changes={np.count_nonzero(s[1:] != s[:-1])}"
    )

# %%
# Near the turning points the arcsine factor blows up, so the bound is read
# on the interior.  Pointwise evaluation right at ``+-chi`` is clamped, so
# the value is large but finite:
print(density_asymptotic(n, 1, AsymptoticIndex(n, 1).chi()))
