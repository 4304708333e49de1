"""Overflow-free special functions.

Everything here is evaluated by recurrences or series that never form
``n!``, ``2**n`` or a raw Hermite polynomial, so orders of 10**4 and beyond
are routine.  Recurrences that can leave the double range carry a running
log-scale next to the mantissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError

__all__ = [
    "LogScaledValue",
    "hermite_function",
    "hermite_functions",
    "assoc_laguerre",
    "assoc_laguerre_scaled",
    "bessel_j",
    "chebyshev_t",
    "log_ratio_factorial",
    "rect",
]

_BIG = 1e150
_LOG_BIG = math.log(_BIG)
_PI_M14 = math.pi ** -0.25


@dataclass(frozen=True)
class LogScaledValue:
    """A real or complex number stored as ``phase * exp(log_magnitude)``."""

    log_magnitude: float
    phase: complex = 1.0

    def __post_init__(self):
        if math.isnan(self.log_magnitude) or self.log_magnitude == math.inf:
            raise DomainError(f"log_magnitude must be finite or -inf, got {self.log_magnitude}")
        if self.log_magnitude != -math.inf and not math.isclose(abs(self.phase), 1.0, rel_tol=1e-12):
            raise DomainError("phase must have unit modulus")

    @classmethod
    def from_value(cls, value) -> "LogScaledValue":
        if value == 0:
            return cls(-math.inf, 1.0)
        mag = abs(value)
        return cls(math.log(mag), value / mag)

    @property
    def value(self):
        if self.log_magnitude == -math.inf:
            return 0.0 * self.phase
        return self.phase * math.exp(self.log_magnitude)

    def __mul__(self, other: "LogScaledValue") -> "LogScaledValue":
        if not isinstance(other, LogScaledValue):
            other = LogScaledValue.from_value(other)
        return LogScaledValue(self.log_magnitude + other.log_magnitude, self.phase * other.phase)

    __rmul__ = __mul__


def _order(n, name="n") -> int:
    if isinstance(n, (bool, np.bool_)) or int(n) != n or n < 0:
        raise ContractError(f"{name} must be a non-negative integer, got {n!r}")
    return int(n)


def _finite(x, name="x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _out(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else arr


def _hermite_sweep(nmax: int, xi: np.ndarray, keep):
    # Scaled recurrence: the Gaussian e^{-xi^2/2} lives in the log-scale.
    logs = -0.5 * xi * xi
    h_prev = np.zeros_like(xi)
    h = np.full_like(xi, _PI_M14)
    rows = {}
    if 0 in keep:
        rows[0] = h * np.exp(logs)
    for k in range(nmax):
        h_next = math.sqrt(2.0 / (k + 1)) * xi * h - math.sqrt(k / (k + 1.0)) * h_prev
        h_prev, h = h, h_next
        big = np.abs(h) > _BIG
        if np.any(big):
            h = np.where(big, h / _BIG, h)
            h_prev = np.where(big, h_prev / _BIG, h_prev)
            logs = np.where(big, logs + _LOG_BIG, logs)
        if k + 1 in keep:
            rows[k + 1] = h * np.exp(logs)
    return rows


def hermite_function(n, xi):
    """Orthonormal Hermite function ``h_n(xi) = H_n(xi) exp(-xi^2/2) / sqrt(2^n n! sqrt(pi))``.

    Uses the bounded three-term recurrence.  ``xi`` may be an array.
    """
    n = _order(n)
    arr = _finite(xi, "xi")
    row = _hermite_sweep(n, np.atleast_1d(arr).astype(float), {n})[n]
    return _out(row.reshape(arr.shape), xi)


def hermite_functions(nmax, xi, orders=None) -> np.ndarray:
    """Several orders from a single sweep.

    Returns shape ``(len(orders),) + xi.shape``; ``orders`` defaults to
    ``0 .. nmax``.
    """
    nmax = _order(nmax, "nmax")
    orders = range(nmax + 1) if orders is None else [_order(k, "order") for k in orders]
    if any(k > nmax for k in orders):
        raise ContractError("requested order exceeds nmax")
    arr = _finite(xi, "xi")
    rows = _hermite_sweep(nmax, np.atleast_1d(arr).astype(float), set(orders))
    return np.stack([rows[k] for k in orders]).reshape((len(orders),) + arr.shape)


def assoc_laguerre_scaled(m, k, x):
    """Associated Laguerre ``L_m^k(x)`` as ``(mantissa, log_scale)`` arrays.

    The value is ``mantissa * exp(log_scale)``; the split keeps very large
    polynomial values representable until they meet a compensating factor.
    """
    m = _order(m, "m")
    k = _order(k, "k")
    x = np.atleast_1d(_finite(x)).astype(float)
    logs = np.zeros_like(x)
    l_prev = np.zeros_like(x)
    l_cur = np.ones_like(x)
    for j in range(m):
        l_next = ((2 * j + 1 + k - x) * l_cur - (j + k) * l_prev) / (j + 1)
        l_prev, l_cur = l_cur, l_next
        big = np.abs(l_cur) > _BIG
        if np.any(big):
            l_cur = np.where(big, l_cur / _BIG, l_cur)
            l_prev = np.where(big, l_prev / _BIG, l_prev)
            logs = np.where(big, logs + _LOG_BIG, logs)
    return l_cur, logs


def assoc_laguerre(m, k, x):
    """Associated Laguerre polynomial ``L_m^k(x)`` by upward recurrence in ``m``."""
    mant, logs = assoc_laguerre_scaled(m, k, x)
    with np.errstate(over="ignore"):
        val = mant * np.exp(logs)
    return _out(val.reshape(np.shape(x)), x)


# --- Bessel J_v ---------------------------------------------------------------

_SERIES_MAX = 2.0
_ASYMP_MIN = 40.0
_BESSEL_BIG = 1e250
_LOG_BESSEL_BIG = math.log(_BESSEL_BIG)


def _bessel_series(v: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    pos = x > 0
    if v == 0:
        out[~pos] = 1.0
    if not np.any(pos):
        return out
    xp = x[pos]
    q = -0.25 * xp * xp
    term = np.ones_like(xp)
    total = np.ones_like(xp)
    for k in range(1, 60):
        term = term * q / (k * (k + v))
        total = total + term
        if np.all(np.abs(term) < 1e-18 * np.abs(total)):
            break
    out[pos] = total * np.exp(v * np.log(0.5 * xp) - math.lgamma(v + 1))
    return out


def _bessel_hankel(v: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * v * v
    p_sum = np.ones_like(x)
    q_sum = np.zeros_like(x)
    term = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    last = np.ones_like(x)
    for k in range(1, 200):
        new = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        # asymptotic series: stop at the smallest term
        grow = np.abs(new) > np.abs(last)
        active &= ~grow
        if not np.any(active):
            break
        term = np.where(active, new, term)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q_sum = np.where(active, q_sum + sign * term, q_sum)
        else:
            p_sum = np.where(active, p_sum + sign * term, p_sum)
        last = np.where(active, np.abs(new), last)
        active &= np.abs(new) > 1e-17
        if not np.any(active):
            break
    phase = x - (0.5 * v + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p_sum * np.cos(phase) - q_sum * np.sin(phase))


def _bessel_miller(v: int, x: np.ndarray) -> np.ndarray:
    top = max(v, float(x.max()))
    start = int(top + 40 + 10 * math.sqrt(top))
    start += start % 2
    j_next = np.zeros_like(x)
    j = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    target = np.zeros_like(x)
    scale = np.zeros_like(x)  # rescalings performed so far
    target_scale = np.zeros_like(x)
    for k in range(start, 0, -1):
        # j holds J_k; produce J_{k-1}
        if k == v:
            target, target_scale = j.copy(), scale.copy()
        if k % 2 == 0:
            norm = norm + 2.0 * j
        j_prev = (2.0 * k / x) * j - j_next
        j_next, j = j, j_prev
        big = np.abs(j) > _BESSEL_BIG
        if np.any(big):
            j = np.where(big, j / _BESSEL_BIG, j)
            j_next = np.where(big, j_next / _BESSEL_BIG, j_next)
            norm = np.where(big, norm / _BESSEL_BIG, norm)
            scale = np.where(big, scale + 1, scale)
    if v == 0:
        target, target_scale = j.copy(), scale.copy()
    norm = norm + j
    with np.errstate(divide="ignore", under="ignore"):
        log_mag = np.log(np.abs(target)) - (scale - target_scale) * _LOG_BESSEL_BIG - np.log(np.abs(norm))
        return np.sign(target) * np.sign(norm) * np.exp(log_mag)


def bessel_j(v, x):
    """Integer-order Bessel function of the first kind ``J_v(x)``.

    Power series for ``|x| <= 2``, the Hankel asymptotic expansion once
    ``|x| >= max(40, v**2)``, and normalized Miller downward recurrence in
    between.
    """
    v = _order(v, "v")
    arr = _finite(x)
    flat = np.atleast_1d(arr).astype(float).ravel()
    ax = np.abs(flat)
    out = np.empty_like(ax)
    small = ax <= _SERIES_MAX
    large = ~small & (ax >= max(_ASYMP_MIN, float(v * v)))
    mid = ~small & ~large
    if np.any(small):
        out[small] = _bessel_series(v, ax[small])
    if np.any(large):
        out[large] = _bessel_hankel(v, ax[large])
    if np.any(mid):
        out[mid] = _bessel_miller(v, ax[mid])
    if v % 2:
        out = np.where(flat < 0, -out, out)
    return _out(out.reshape(arr.shape), x)


def chebyshev_t(v, x):
    """Chebyshev polynomial of the first kind ``T_v(x)``."""
    v = _order(v, "v")
    arr = _finite(x)
    a = np.atleast_1d(arr).astype(float)
    inside = np.abs(a) <= 1.0
    out = np.empty_like(a)
    out[inside] = np.cos(v * np.arccos(a[inside]))
    ax = np.abs(a[~inside])
    with np.errstate(over="ignore"):
        outer = np.cosh(v * np.arccosh(ax))
    if v % 2:
        outer = np.where(a[~inside] < 0, -outer, outer)
    out[~inside] = outer
    return _out(out.reshape(arr.shape), x)


def log_ratio_factorial(n, m) -> float:
    """``ln(m! / n!)`` for ``n >= m >= 0`` via log-gamma."""
    n = _order(n)
    m = _order(m, "m")
    if n < m:
        raise ContractError(f"log_ratio_factorial needs n >= m, got n={n}, m={m}")
    if n == m:
        return 0.0
    return math.lgamma(m + 1) - math.lgamma(n + 1)


def rect(u):
    """Rectangular window: 1 inside ``|u| < 1/2``, 1/2 on the boundary, 0 outside."""
    a = np.abs(np.asarray(u, dtype=float))
    out = np.where(a < 0.5, 1.0, np.where(a == 0.5, 0.5, 0.0))
    return _out(out, u)
