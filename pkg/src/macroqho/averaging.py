"""Local (windowed) averages of rapidly oscillating densities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractError, DomainError
from .oscillator import NATURAL, OscillatorParams
from .quadrature import QuadratureSpec, composite_nodes

CLAMP_FRACTION = 0.9


@dataclass(frozen=True)
class AveragingWindow:
    """Half-width ``epsilon`` of a hard averaging window.

    ``rule="wavelength"`` windows also remember how many local periods they
    span and the local wavelength of the integrand, which sets the node
    budget and the refusal threshold.
    """

    epsilon: float
    rule: str = "fixed"
    periods: float | None = None
    wavelength: float | None = None

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ContractError(f"epsilon must be positive, got {self.epsilon}")
        if self.rule not in ("fixed", "wavelength"):
            raise ContractError(f"unknown window rule {self.rule!r}")
        if self.rule == "wavelength" and not (self.periods and self.periods > 0):
            raise ContractError("wavelength-scaled windows need a positive period count")


def local_momentum(n: int, x, params: OscillatorParams = NATURAL):
    """Classical momentum ``m omega sqrt(x_n^2 - x^2)`` (zero outside the turning points)."""
    xn = params.amplitude(n)
    x = np.asarray(x, dtype=float)
    return params.mass * params.omega * np.sqrt(np.clip(xn * xn - x * x, 0.0, None))


def default_window(n: int, x: float, k: float = 3, params: OscillatorParams = NATURAL) -> AveragingWindow:
    """Window spanning ``k`` local de Broglie wavelengths, clamped to ``|x| + eps <= 0.9 x_n``."""
    if k <= 0:
        raise ContractError("period count k must be positive")
    xn = params.amplitude(n)
    room = CLAMP_FRACTION * xn - abs(x)
    if room <= 0:
        raise DomainError(
            f"|x|={abs(x):.4g} is outside {CLAMP_FRACTION} x_n={CLAMP_FRACTION * xn:.4g}; "
            "local averages are not defined near the turning points"
        )
    lam = 2 * math.pi * params.hbar / float(local_momentum(n, x, params))
    eps = min(k * lam / 2, room)
    # |psi_n|^2 oscillates at half the de Broglie wavelength; the shortest one
    # in the window sits at the point closest to the origin
    inner = max(abs(x) - eps, 0.0)
    shortest = math.pi * params.hbar / float(local_momentum(n, inner, params))
    return AveragingWindow(eps, "wavelength", k, shortest)


def local_average(
    field_fn: Callable[[np.ndarray], np.ndarray],
    x: float,
    window: AveragingWindow,
    quad: QuadratureSpec | None = None,
) -> float:
    """Mean of ``field_fn`` over ``[x - eps, x + eps]``."""
    quad = quad or QuadratureSpec()
    eps = window.epsilon
    y, w = composite_nodes(x - eps, x + eps, window.wavelength, quad)
    vals = np.asarray(field_fn(y), dtype=float)
    return float(w @ vals) / (2 * eps)
