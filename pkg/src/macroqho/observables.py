"""Expectation values of position observables: exact and asymptotic."""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import specfun
from .asymptotics import AsymptoticIndex, default_vmax, turning_amplitude
from .errors import ContractError, NonConvergenceError
from .fourier import _check_tail, _cutoff, _position_wavenumber
from .oscillator import (
    NATURAL,
    OscillatorParams,
    Superposition,
    _check_real,
    classical_frequency,
    energy,
)
from .quadrature import QuadratureSpec, composite_nodes

_NODE_CAP = 2**16
_START_NODES = 64
_CONVERGED = 1e-10

_ids = itertools.count()


@dataclass(frozen=True, eq=False)
class PositionObservable:
    """An observable diagonal in position, ``O(x)``.

    ``degree`` is set for polynomials and lets the Chebyshev rule pick an
    exact node count.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    degree: int | None = None
    name: str = ""
    key: int = field(default_factory=lambda: next(_ids), compare=False)

    def __call__(self, x):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float)


def polynomial(coeffs: Sequence[float], name: str | None = None) -> PositionObservable:
    """``sum_k coeffs[k] x^k``."""
    coeffs = [float(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    poly = np.polynomial.Polynomial(coeffs)
    return PositionObservable(poly, len(coeffs) - 1, name or f"poly{tuple(coeffs)}")


def monomial(k: int) -> PositionObservable:
    specfun._order(k, "k")
    return polynomial([0.0] * k + [1.0], name=f"x^{k}")


POSITION = monomial(1)
POSITION_SQUARED = monomial(2)


class _MatrixElementCache:
    """Thread-safe memo of ``<psi_lo| O |psi_hi>`` keyed by sorted pair and observable."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)
        return self._data[key]

    def clear(self):
        with self._lock:
            self._data.clear()


MATRIX_ELEMENTS = _MatrixElementCache()


def matrix_element(n: int, m: int, obs: PositionObservable, params: OscillatorParams = NATURAL,
                   quad: QuadratureSpec | None = None) -> float:
    """``int O(x) psi_n(x) psi_m(x) dx`` by composite Gauss-Legendre (cached)."""
    quad = quad or QuadratureSpec()
    lo_n, hi_n = sorted((int(n), int(m)))
    key = (lo_n, hi_n, obs.key, params, quad)
    hit = MATRIX_ELEMENTS.get(key)
    if hit is not None:
        return hit
    if quad.domain is None:
        cut = _cutoff(hi_n, lo_n, params)
        lo, hi = -cut, cut
    else:
        lo, hi = quad.domain
    x, w = composite_nodes(lo, hi, 2 * math.pi / _position_wavenumber(hi_n, lo_n, params), quad)
    a = params.alpha()
    rows = specfun.hermite_functions(hi_n, math.sqrt(a) * x, (lo_n, hi_n))
    rho = math.sqrt(a) * rows[0] * rows[-1]
    integrand = obs(x) * rho
    ends = np.array([lo, hi])
    end_rows = specfun.hermite_functions(hi_n, math.sqrt(a) * ends, (lo_n, hi_n))
    _check_tail(integrand, (lo, hi), lambda _: obs(ends) * end_rows[0] * end_rows[-1] * math.sqrt(a))
    return MATRIX_ELEMENTS.put(key, float(w @ integrand))


def expectation_exact(state: Superposition, obs: PositionObservable, t, params: OscillatorParams = NATURAL,
                      quad: QuadratureSpec | None = None):
    """``<O>(t) = sum_{n,m} c_n c_m^* O_{m,n} exp(-i (E_n - E_m) t / hbar)``."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    total = np.zeros(t_arr.shape, dtype=complex)
    scale = np.zeros(t_arr.shape)
    for n, cn in state.entries:
        for m, cm in state.entries:
            elem = matrix_element(n, m, obs, params, quad)
            term = cn * np.conj(cm) * elem * np.exp(-1j * (energy(n, params) - energy(m, params)) * t_arr / params.hbar)
            total += term
            scale += np.abs(term)
    out = _check_real(total, scale, "expectation_exact")
    return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))


def chebyshev_moment(obs: PositionObservable, chi: float, v: int, nodes: int | None = None) -> float:
    """``int_{-1}^{1} O(chi s) T_v(s) / (pi sqrt(1 - s^2)) ds`` by Gauss-Chebyshev.

    With ``K`` nodes ``theta_k = (2k - 1) pi / (2K)`` the rule is
    ``(1/K) sum_k O(chi cos theta_k) cos(v theta_k)``.  Polynomials of known
    degree get an exact node count; otherwise the count doubles from 64
    until two successive values agree to 1e-10.
    """
    specfun._order(v, "v")
    if not chi > 0:
        raise ContractError("chi must be positive")

    def rule(K):
        theta = (2 * np.arange(1, K + 1) - 1) * math.pi / (2 * K)
        # mirrored nodes: odd moments cancel exactly instead of to rounding
        s = np.cos(theta)
        s = 0.5 * (s - s[::-1])
        return math.fsum(obs(chi * s) * np.cos(v * theta)) / K

    if nodes is not None:
        return rule(int(nodes))
    if obs.degree is not None:
        return rule(v + obs.degree + 1)
    K = _START_NODES
    prev = rule(K)
    while K < _NODE_CAP:
        K *= 2
        cur = rule(K)
        if abs(cur - prev) <= _CONVERGED * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise NonConvergenceError(f"Chebyshev moment did not converge with {_NODE_CAP} nodes")


def expectation_asymptotic(state: Superposition, obs: PositionObservable, t, vmax: int | None = None,
                           params: OscillatorParams = NATURAL):
    """Classical average plus Chebyshev-moment interference corrections.

    Each pair ``(n, n - v)`` with ``1 <= v <= vmax`` contributes its
    prefactor times ``chebyshev_moment(O, chi_{n,n-v}, v)`` with phase
    ``exp(-i v omega t)``, together with its complex conjugate.
    """
    vmax = default_vmax(state) if vmax is None else int(vmax)
    if vmax < 0:
        raise ContractError("vmax must be >= 0")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    coeffs = state.as_dict()
    classical = math.fsum(
        abs(c) ** 2 * chebyshev_moment(obs, turning_amplitude(n + 0.5, params), 0) for n, c in state.entries
    )
    total = np.full(t_arr.shape, classical, dtype=complex)
    scale = np.full(t_arr.shape, abs(classical))
    for n, cn in state.entries:
        for v in range(1, vmax + 1):
            m = n - v
            if m not in coeffs:
                continue
            idx = AsymptoticIndex(n, v)
            moment = chebyshev_moment(obs, idx.chi(params), v)
            term = cn * np.conj(coeffs[m]) * idx.prefactor * moment * np.exp(
                -1j * classical_frequency(n, v, params) * t_arr
            )
            total += term + np.conj(term)
            scale += 2 * np.abs(term)
    out = _check_real(total, scale, "expectation_asymptotic")
    return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))


def classical_expectation(state: Superposition, obs: PositionObservable, params: OscillatorParams = NATURAL) -> float:
    """The time-independent classical term alone."""
    return expectation_asymptotic(state, obs, 0.0, vmax=0, params=params)
