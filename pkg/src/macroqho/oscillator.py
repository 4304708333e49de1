"""Harmonic-oscillator eigensystem and the exact time-dependent density."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import specfun
from .errors import ConsistencyError, ContractError

IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True)
class OscillatorParams:
    """Mass, angular frequency and Planck constant; natural units by default."""

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ContractError(f"{name} must be positive and finite, got {val}")

    def alpha(self) -> float:
        return self.mass * self.omega / self.hbar

    @property
    def length_scale(self) -> float:
        return 1.0 / math.sqrt(self.alpha())

    @property
    def momentum_scale(self) -> float:
        return math.sqrt(self.mass * self.omega * self.hbar)

    def amplitude(self, n) -> float:
        """Classical turning point ``x_n`` with ``m omega^2 x_n^2 / 2 = E_n``."""
        return math.sqrt((2 * n + 1) * self.hbar / (self.mass * self.omega))


NATURAL = OscillatorParams()


@dataclass(frozen=True)
class ModePair:
    """Ordered pair of quantum numbers ``(n, m)``."""

    n: int
    m: int

    def __post_init__(self):
        specfun._order(self.n, "n")
        specfun._order(self.m, "m")

    def offset(self) -> int:
        return self.n - self.m

    def canonical(self) -> tuple["ModePair", bool]:
        """Return the pair with ``n >= m`` and whether it was swapped."""
        if self.n >= self.m:
            return self, False
        return ModePair(self.m, self.n), True


@dataclass(frozen=True)
class Superposition:
    """Pure state ``sum_n c_n |n>`` with finite support.

    Coefficients are normalized on construction.
    """

    entries: tuple[tuple[int, complex], ...]

    def __init__(self, entries: Mapping[int, complex] | tuple):
        items = dict(entries)
        if not items:
            raise ContractError("a superposition needs at least one state")
        for n in items:
            specfun._order(n, "quantum number")
        norm = math.sqrt(math.fsum(abs(c) ** 2 for c in items.values()))
        if norm == 0:
            raise ContractError("all coefficients are zero")
        ordered = tuple((int(n), complex(items[n]) / norm) for n in sorted(items))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def eigenstate(cls, n: int) -> "Superposition":
        return cls({n: 1.0})

    @classmethod
    def gaussian(cls, nbar: float, sigma: float) -> "Superposition":
        """Discrete Gaussian with ``|c_n|^2`` of mean ``nbar`` and width ``sigma``.

        Truncated at six widths and renormalized.
        """
        if sigma <= 0:
            raise ContractError("sigma must be positive")
        lo = max(0, math.ceil(nbar - 6 * sigma))
        hi = math.floor(nbar + 6 * sigma)
        if hi < lo:
            raise ContractError("empty support")
        return cls({n: math.exp(-((n - nbar) ** 2) / (4 * sigma**2)) for n in range(lo, hi + 1)})

    @property
    def ns(self) -> np.ndarray:
        return np.array([n for n, _ in self.entries], dtype=int)

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([c for _, c in self.entries], dtype=complex)

    def as_dict(self) -> dict[int, complex]:
        return dict(self.entries)

    def support_width(self) -> int:
        ns = self.ns
        return int(ns[-1] - ns[0])


@dataclass
class SampledField:
    """Values of some formula on a strictly increasing grid."""

    abscissae: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.abscissae = np.asarray(self.abscissae, dtype=float)
        self.values = np.asarray(self.values)
        if self.abscissae.ndim != 1 or self.abscissae.shape != self.values.shape:
            raise ContractError("abscissae and values must be 1-D and of equal length")
        if np.any(np.diff(self.abscissae) <= 0):
            raise ContractError("abscissae must be strictly increasing")


def energy(n, params: OscillatorParams = NATURAL) -> float:
    specfun._order(n)
    return params.hbar * params.omega * (n + 0.5)


def eigenstate(n, x, params: OscillatorParams = NATURAL):
    """Position-space eigenfunction ``psi_n(x) = alpha^{1/4} h_n(sqrt(alpha) x)``."""
    a = params.alpha()
    return a**0.25 * specfun.hermite_function(n, math.sqrt(a) * np.asarray(x, dtype=float))


def density_component(n, m, x, params: OscillatorParams = NATURAL):
    """Spatial density component ``psi_n(x) psi_m(x)``."""
    a = params.alpha()
    xi = math.sqrt(a) * np.asarray(x, dtype=float)
    if n == m:
        h = specfun.hermite_function(n, xi)
        return math.sqrt(a) * h * h
    lo, hi = min(n, m), max(n, m)
    if hi - lo < 64:
        # one sweep gives both factors
        rows = specfun.hermite_functions(hi, xi, (lo, hi))
        val = math.sqrt(a) * rows[0] * rows[1]
        return float(val) if np.ndim(x) == 0 else val
    return math.sqrt(a) * specfun.hermite_function(n, xi) * specfun.hermite_function(m, xi)


def _check_real(total: np.ndarray, scale: np.ndarray, what: str) -> np.ndarray:
    resid = np.abs(total.imag)
    bound = IMAG_RESIDUE_TOL * np.maximum(scale, 1.0)
    if np.any(resid > bound):
        raise ConsistencyError(f"{what}: imaginary residue {resid.max():.3e} exceeds tolerance")
    return total.real


def density_matrix_xt(state: Superposition, x, t: float, params: OscillatorParams = NATURAL):
    """Exact ``rho(x, t) = sum_{n,m} c_n c_m^* psi_n psi_m exp(-i (E_n - E_m) t / hbar)``."""
    x_arr = np.asarray(x, dtype=float)
    xi = math.sqrt(params.alpha()) * np.atleast_1d(x_arr)
    ns, cs = state.ns, state.coeffs
    # rows of psi over the support, evaluated in one sweep
    rows = specfun.hermite_functions(int(ns[-1]), xi, ns) * params.alpha() ** 0.25
    energies = [energy(n, params) for n in ns]
    total = np.zeros(xi.shape, dtype=complex)
    scale = np.zeros(xi.shape)
    for i in range(len(ns)):
        for j in range(len(ns)):
            # pairwise phases keep the diagonal exactly time independent
            phase = np.exp(-1j * (energies[i] - energies[j]) * t / params.hbar)
            term = cs[i] * np.conj(cs[j]) * phase * rows[i] * rows[j]
            total += term
            scale += np.abs(term)
    out = _check_real(total, scale, "density_matrix_xt")
    return float(out[0]) if x_arr.ndim == 0 else out.reshape(x_arr.shape)


def classical_frequency(n, v, params: OscillatorParams = NATURAL) -> float:
    """``v * omega_CL`` with ``omega_CL = 2 pi dE_n/dJ`` and ``J = n h``.

    For the oscillator ``dE_n/dJ = omega / (2 pi)`` at every ``n``, so this
    is ``v * omega`` and equals ``(E_{n+v} - E_n) / hbar`` exactly.
    """
    specfun._order(n)
    return v * params.omega
