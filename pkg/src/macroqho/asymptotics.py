"""Large-n (first-order Szego) asymptotics of the oscillator density matrix.

The Fourier coefficient of ``psi_n psi_{n-v}`` behaves like a Bessel
function ``J_v``; its inverse transform is a Chebyshev polynomial over the
arcsine density of a classical oscillator with amplitude ``chi``.
Only the leading term of the Bessel expansion is kept; the integral
correction term is deliberately not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import ContractError
from .fourier import xi0
from .oscillator import (
    NATURAL,
    OscillatorParams,
    SampledField,
    Superposition,
    _check_real,
    classical_frequency,
)

ENDPOINT_REL = 1e-12


@dataclass(frozen=True)
class AsymptoticIndex:
    """Pair ``(n, n - v)`` seen from the diagonal it sits on."""

    n: int
    v: int

    def __post_init__(self):
        specfun._order(self.n)
        specfun._order(self.v, "v")
        if self.n < 1:
            raise ContractError("asymptotic index needs n >= 1")
        if self.v > self.n:
            raise ContractError(f"offset v={self.v} exceeds n={self.n}")

    @property
    def N(self) -> float:
        return self.n - (self.v - 1) / 2

    @property
    def prefactor(self) -> float:
        """``(1 - (v - 1) / (2 n))^(-v/2)``; exactly 1 for ``v = 0``."""
        if self.v == 0:
            return 1.0
        return (1 - (self.v - 1) / (2 * self.n)) ** (-self.v / 2)

    def chi(self, params: OscillatorParams = NATURAL) -> float:
        return turning_amplitude(self.N, params)


def turning_amplitude(N: float, params: OscillatorParams = NATURAL) -> float:
    """``sqrt(2 N hbar / (m omega))``; with ``N = n + 1/2`` this is ``x_n``."""
    return math.sqrt(2 * N * params.hbar / (params.mass * params.omega))


def fourier_asymptotic(n: int, v: int, p, params: OscillatorParams = NATURAL):
    """``(-i)^v (1 - (v-1)/(2n))^(-v/2) J_v(2 sqrt(N) xi0)`` with ``N = n - (v-1)/2``."""
    idx = AsymptoticIndex(n, v)
    arg = 2 * math.sqrt(idx.N) * xi0(p, params)
    val = (-1j) ** v * idx.prefactor * np.asarray(specfun.bessel_j(v, arg))
    return complex(val) if np.ndim(p) == 0 else val


def _arcsine_chebyshev(v: int, x, chi: float):
    """``T_v(x/chi) / (pi sqrt(chi^2 - x^2)) Rect(x / 2 chi)`` with endpoint clamping.

    Returns the values and a mask of points that were clamped.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    ax = np.abs(xa)
    near = np.abs(ax - chi) <= ENDPOINT_REL * chi
    xc = np.where(near, np.sign(xa) * chi * (1 - ENDPOINT_REL), xa)
    window = specfun.rect(xa / (2 * chi))
    inside = (np.abs(xc) < chi) & (window > 0)
    out = np.zeros_like(xa)
    # evaluate on |x| and restore the sign so parity holds bit for bit
    u = np.abs(xc[inside]) / chi
    sign = np.sign(xa[inside]) ** v if v % 2 else 1.0
    out[inside] = (
        sign * specfun.chebyshev_t(v, u) / (math.pi * chi * np.sqrt((1 - u) * (1 + u))) * window[inside]
    )
    return out, near


def density_asymptotic(n: int, v: int, x, params: OscillatorParams = NATURAL):
    """Macroscopic ``rho~_{n,n-v}(x)``: prefactor times a Chebyshev-weighted arcsine density.

    Never returns infinity: points within ``1e-12 chi`` of a turning point
    are evaluated at the clamped point ``chi (1 - 1e-12)`` (halved exactly
    on the boundary by the Rect convention).
    """
    idx = AsymptoticIndex(n, v)
    out, _ = _arcsine_chebyshev(v, x, idx.chi(params))
    out = idx.prefactor * out
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def density_asymptotic_field(n: int, v: int, grid, params: OscillatorParams = NATURAL) -> SampledField:
    """Grid version of :func:`density_asymptotic` that records clamped points."""
    idx = AsymptoticIndex(n, v)
    out, near = _arcsine_chebyshev(v, grid, idx.chi(params))
    meta = {
        "formula": "density_asymptotic",
        "n": n,
        "v": v,
        "chi": idx.chi(params),
        "prefactor": idx.prefactor,
        "clamped": np.flatnonzero(near).tolist(),
    }
    return SampledField(np.asarray(grid, dtype=float), idx.prefactor * out, meta)


def classical_density(n: int, x, params: OscillatorParams = NATURAL):
    """Arcsine density ``1 / (pi sqrt(x_n^2 - x^2))`` of a classical oscillator with energy ``E_n``."""
    specfun._order(n)
    out, _ = _arcsine_chebyshev(0, x, turning_amplitude(n + 0.5, params))
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(np.shape(x))


def szego_first_order(n: int, v: int, x):
    """Leading Szego term for ``exp(-x^2/2) x^v L_n^v(x^2)``.

    ``Gamma(n+v+1) / (N^(v/2) n!) J_v(2 sqrt(N) x)`` with ``N = n + (v+1)/2``.
    """
    specfun._order(n)
    specfun._order(v, "v")
    if n < 1:
        raise ContractError("szego_first_order needs n >= 1")
    N = n + (v + 1) / 2
    log_ratio = -specfun.log_ratio_factorial(n + v, n) - 0.5 * v * math.log(N)
    return math.exp(log_ratio) * specfun.bessel_j(v, 2 * math.sqrt(N) * np.asarray(x, dtype=float))


def default_vmax(state: Superposition) -> int:
    return 3 * state.support_width()


def macroscopic_density_xt(
    state: Superposition,
    x,
    t: float,
    vmax: int | None = None,
    params: OscillatorParams = NATURAL,
):
    """Macroscopic density ``sum_{n,v} c_n c_{n-v}^* rho~^asym_{n,n-v}(x) exp(-i v omega_CL t)``.

    Both orientations ``+-v`` are summed (the ``-v`` term is the complex
    conjugate of the ``+v`` one), so the result is real.
    """
    vmax = default_vmax(state) if vmax is None else int(vmax)
    if vmax < 0:
        raise ContractError("vmax must be >= 0")
    x_arr = np.asarray(x, dtype=float)
    xs = np.atleast_1d(x_arr)
    coeffs = state.as_dict()
    total = np.zeros(xs.shape, dtype=complex)
    scale = np.zeros(xs.shape)
    for n, cn in state.entries:
        for v in range(0, vmax + 1):
            m = n - v
            if m not in coeffs:
                continue
            if n == 0:
                # n = 0 only pairs with itself; use the arcsine at E_0
                rho = classical_density(0, xs, params)
            else:
                rho = density_asymptotic(n, v, xs, params)
            term = cn * np.conj(coeffs[m]) * rho * np.exp(-1j * classical_frequency(n, v, params) * t)
            total += term
            scale += np.abs(term)
            if v:
                total += np.conj(term)
                scale += np.abs(term)
    out = _check_real(total, scale, "macroscopic_density_xt")
    return float(out[0]) if x_arr.ndim == 0 else out.reshape(x_arr.shape)
