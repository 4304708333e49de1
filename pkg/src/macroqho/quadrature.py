"""Composite Gauss-Legendre rules shared by the numerical oracles.

Every oracle in the package integrates something oscillatory over a finite
interval.  They all go through :func:`composite_nodes`, which refuses node
budgets that under-resolve the shortest wavelength instead of returning a
plausible-looking wrong number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractError, UnresolvedOscillationError

MIN_NODES_PER_WAVELENGTH = 8
_AUTO_NODES_PER_WAVELENGTH = 24
_PANEL_ORDER = 20


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate.

    ``nodes=None`` lets the caller pick a node count from the integrand's
    oscillation scale; ``domain=None`` lets it pick the truncation interval.
    """

    nodes: int | None = None
    domain: tuple[float, float] | None = None
    scheme: str = "gauss-legendre"
    panel_order: int = _PANEL_ORDER

    def __post_init__(self):
        if self.scheme != "gauss-legendre":
            raise ContractError(f"unknown quadrature scheme {self.scheme!r}")
        if self.nodes is not None and self.nodes < 2:
            raise ContractError("nodes must be >= 2")
        if self.domain is not None and not self.domain[0] < self.domain[1]:
            raise ContractError("domain must be an increasing pair")
        if self.panel_order < 2:
            raise ContractError("panel_order must be >= 2")


@lru_cache(maxsize=64)
def _legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def composite_nodes(lo: float, hi: float, wavelength: float | None, quad: QuadratureSpec):
    """Nodes and weights of a composite Gauss-Legendre rule on ``[lo, hi]``.

    ``wavelength`` is the shortest oscillation length of the integrand over
    the interval (``None`` for non-oscillatory integrands).  An explicit
    ``quad.nodes`` below eight nodes per wavelength raises
    :class:`UnresolvedOscillationError`.
    """
    length = hi - lo
    if not length > 0:
        raise ContractError("integration interval must have positive length")
    waves = length / wavelength if wavelength else 0.0
    order = quad.panel_order
    if quad.nodes is None:
        total = max(4 * order, math.ceil(_AUTO_NODES_PER_WAVELENGTH * waves))
    else:
        total = quad.nodes
        if waves and total / waves < MIN_NODES_PER_WAVELENGTH:
            raise UnresolvedOscillationError(
                f"{total} nodes over {waves:.1f} wavelengths "
                f"(< {MIN_NODES_PER_WAVELENGTH} per wavelength)"
            )
    panels = max(1, math.ceil(total / order))
    t, w = _legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return x, wt
