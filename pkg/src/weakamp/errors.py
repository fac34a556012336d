"""Exception types shared across the package."""


class WeakampError(Exception):
    """Base class for all errors raised by this package."""


class TruncationError(WeakampError):
    """A truncated Fock space is too small to represent the requested state
    or operator to the required fidelity."""


class DegenerateError(WeakampError):
    """A conditional expectation is requested for an event whose probability
    underflows to zero (0/0 postselection)."""


class OrthogonalError(WeakampError):
    """Weak value requested for exactly orthogonal pre- and postselection."""


class StiffnessError(WeakampError):
    """The master-equation integrator failed (step size collapsed or the
    solver reported failure)."""


class ConfigError(WeakampError):
    """Invalid command-line or device configuration."""
