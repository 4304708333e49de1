"""Exact and large-n asymptotic density matrices of the quantum harmonic oscillator."""

__version__ = "0.1.0"

from .asymptotics import (
    AsymptoticIndex,
    classical_density,
    density_asymptotic,
    density_asymptotic_field,
    fourier_asymptotic,
    macroscopic_density_xt,
    szego_first_order,
    turning_amplitude,
)
from .averaging import AveragingWindow, default_window, local_average
from .errors import (
    ConsistencyError,
    ContractError,
    DomainError,
    NonConvergenceError,
    NumericalRefusal,
    UnresolvedOscillationError,
)
from .fourier import fourier_exact, fourier_oracle, inverse_transform_field, momentum_from_xi0, xi0
from .observables import (
    POSITION,
    POSITION_SQUARED,
    PositionObservable,
    chebyshev_moment,
    classical_expectation,
    expectation_asymptotic,
    expectation_exact,
    monomial,
    polynomial,
)
from .oscillator import (
    NATURAL,
    ModePair,
    OscillatorParams,
    SampledField,
    Superposition,
    classical_frequency,
    density_component,
    density_matrix_xt,
    eigenstate,
    energy,
)
from .quadrature import QuadratureSpec
