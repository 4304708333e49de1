"""Fourier coefficients of the density components.

Convention: the forward transform is the plain integral
``f(p) = int rho(x) exp(-i p x / hbar) dx`` and the inverse carries the
``1 / (2 pi hbar)``.  With this placement the Gaussian ground state maps to
``exp(-xi0^2 / 2)`` with unit prefactor, so ``f_{n,n}(0) = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun
from .errors import UnresolvedOscillationError
from .oscillator import NATURAL, OscillatorParams, SampledField, density_component
from .quadrature import QuadratureSpec, composite_nodes

TAIL_TOL = 1e-12


@dataclass(frozen=True)
class TransformConvention:
    forward_kernel_sign: int = -1
    forward_prefactor: float = 1.0

    def inverse_prefactor(self, params: OscillatorParams) -> float:
        return 1.0 / (2 * math.pi * params.hbar)


CONVENTION = TransformConvention()


def xi0(p, params: OscillatorParams = NATURAL):
    """Dimensionless momentum ``p / sqrt(2 m omega hbar)``."""
    return np.asarray(p, dtype=float) / math.sqrt(2 * params.mass * params.omega * params.hbar)


def momentum_from_xi0(xi, params: OscillatorParams = NATURAL):
    return np.asarray(xi, dtype=float) * math.sqrt(2 * params.mass * params.omega * params.hbar)


def fourier_exact(n: int, m: int, p, params: OscillatorParams = NATURAL):
    """Closed-form coefficient ``f_{n,m}(p)``.

    For ``n >= m``::

        (-i)^(n-m) sqrt(m!/n!) exp(-xi0^2/2) xi0^(n-m) L_m^(n-m)(xi0^2)

    The magnitude is assembled in log space so no intermediate overflows.
    Since ``psi_n psi_m`` is symmetric in the indices, ``f_{n,m} = f_{m,n}``.
    """
    specfun._order(n)
    specfun._order(m, "m")
    if n < m:
        n, m = m, n
    v = n - m
    xs = np.atleast_1d(xi0(p, params))
    x2 = xs * xs
    mant, lscale = specfun.assoc_laguerre_scaled(m, v, x2)
    with np.errstate(divide="ignore"):
        log_pow = v * np.log(np.abs(xs)) if v else np.zeros_like(xs)
    log_mag = 0.5 * specfun.log_ratio_factorial(n, m) - 0.5 * x2 + log_pow + lscale
    sign = np.sign(mant) * (np.sign(xs) ** v if v else 1.0)
    with np.errstate(under="ignore"):
        real = sign * np.abs(mant) * np.exp(log_mag)
    val = (-1j) ** v * real
    return complex(val[0]) if np.ndim(p) == 0 else val.reshape(np.shape(p))


def _cutoff(n: int, m: int, params: OscillatorParams) -> float:
    top = max(n, m)
    return params.amplitude(top) * (1 + 10 / math.sqrt(max(top, 1))) + 10 / math.sqrt(params.alpha())


def _position_wavenumber(n: int, m: int, params: OscillatorParams) -> float:
    # local wavenumbers of psi_n and psi_m at the origin bound their product's
    return math.sqrt(params.alpha()) * (math.sqrt(2 * n + 1) + math.sqrt(2 * m + 1))


def fourier_oracle(n: int, m: int, p, params: OscillatorParams = NATURAL, quad: QuadratureSpec | None = None):
    """Brute-force forward transform of ``psi_n psi_m`` by composite Gauss-Legendre.

    Independent of the Laguerre closed form; used to check it.
    """
    quad = quad or QuadratureSpec()
    p_arr = np.atleast_1d(np.asarray(p, dtype=float))
    if quad.domain is None:
        cut = _cutoff(n, m, params)
        lo, hi = -cut, cut
    else:
        lo, hi = quad.domain
    k_max = _position_wavenumber(n, m, params) + np.max(np.abs(p_arr)) / params.hbar
    x, w = composite_nodes(lo, hi, 2 * math.pi / k_max, quad)
    rho = density_component(n, m, x, params)
    _check_tail(rho, (lo, hi), lambda y: density_component(n, m, y, params))
    kernel = np.exp(-1j * np.outer(p_arr, x) / params.hbar)
    val = kernel @ (w * rho)
    return complex(val[0]) if np.ndim(p) == 0 else val.reshape(np.shape(p))


def _check_tail(samples: np.ndarray, edges, fn) -> None:
    peak = np.max(np.abs(samples))
    ends = np.abs(fn(np.array(edges, dtype=float)))
    if peak > 0 and np.max(ends) > TAIL_TOL * peak:
        raise UnresolvedOscillationError(
            f"integrand not negligible at the truncation edges ({np.max(ends) / peak:.2e} of peak)"
        )


def inverse_transform_field(
    coeff_fn: Callable[[np.ndarray], np.ndarray],
    grid,
    params: OscillatorParams = NATURAL,
    quad: QuadratureSpec | None = None,
    *,
    taper: float | None = None,
    coeff_scale: float = 0.0,
) -> SampledField:
    """Numerical inverse transform ``(1 / 2 pi hbar) int f(p) exp(i p x / hbar) dp``.

    ``coeff_fn`` maps momentum arrays to coefficients.  Non-decaying
    coefficients need either a finite ``quad.domain`` or a Gaussian
    ``taper`` (momentum width); the taper smooths the result by a Gaussian
    of width ``hbar / (taper sqrt 2)`` in position.  ``coeff_scale`` is the
    length over which ``coeff_fn`` itself oscillates in ``p / hbar`` units
    (e.g. a turning amplitude), used for the node-density check.
    """
    quad = quad or QuadratureSpec()
    xs = np.asarray(grid, dtype=float)
    if quad.domain is not None:
        lo, hi = quad.domain
    elif taper is not None:
        lo, hi = -7.0 * taper, 7.0 * taper
    else:
        # decaying coefficients: assume Gaussian-type decay on the oscillator scale
        lo, hi = -40.0 * params.momentum_scale, 40.0 * params.momentum_scale
    k_max = (np.max(np.abs(xs)) + coeff_scale) / params.hbar
    wavelength = 2 * math.pi / k_max if k_max > 0 else None
    p, w = composite_nodes(lo, hi, wavelength, quad)
    f = np.asarray(coeff_fn(p), dtype=complex)
    if taper is not None:
        f = f * np.exp(-((p / taper) ** 2))
    kernel = np.exp(1j * np.outer(xs, p) / params.hbar)
    vals = CONVENTION.inverse_prefactor(params) * (kernel @ (w * f))
    return SampledField(xs, vals, {"formula": "inverse_transform", "domain": (lo, hi), "taper": taper})
