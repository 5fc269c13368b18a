"""Exception types shared across the package."""


class CausalTransportError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(CausalTransportError):
    """Raised when input data fails structural validation."""


class CapacityError(CausalTransportError):
    """Raised when an exhaustive routine is asked to exceed its size cap."""


class NotStablyCausalError(CausalTransportError):
    """Raised when a construction requires an antisymmetric causal order
    but the ground's closure contains a nontrivial cycle."""


class InvariantViolationError(CausalTransportError):
    """Raised when a result fails its own machine-checkable proof
    obligation; indicates a bug, not bad input."""
