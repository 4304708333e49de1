"""Exception hierarchy shared by every module."""


class MacroQHOError(Exception):
    """Base class for errors raised by this package."""


class DomainError(MacroQHOError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ContractError(MacroQHOError, ValueError):
    """A caller violated an ordering or range precondition."""


class ConsistencyError(MacroQHOError, ArithmeticError):
    """An internal numerical identity failed (e.g. a density came out complex)."""


class NumericalRefusal(MacroQHOError, ArithmeticError):
    """A quadrature was asked to do something it cannot do reliably.

    Raised instead of returning a number that may be silently wrong.
    """


class UnresolvedOscillationError(NumericalRefusal):
    """The node budget does not resolve the integrand's fastest oscillation."""


class NonConvergenceError(NumericalRefusal):
    """An adaptive rule hit its refinement cap without converging."""
