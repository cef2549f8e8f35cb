"""Exception hierarchy shared by all gouyprop modules."""


class GouypropError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GouypropError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class IntegrationError(GouypropError, RuntimeError):
    """The adaptive integrator could not reach the end of the medium.

    Attributes
    ----------
    z : float
        Position (nm) where the integrator stopped.
    """

    def __init__(self, message, z):
        super().__init__(f"{message} (failed at z = {z:.6g} nm)")
        self.z = z


class CausticError(GouypropError, ValueError):
    """The Mehler kernel was requested too close to a caustic (sin(theta) = 0)."""


class ResolutionError(GouypropError, ValueError):
    """A field-strength grid is too coarse for oscillatory quadrature.

    Attributes
    ----------
    required_points : int
        Smallest point count that satisfies the sampling criterion.
    """

    def __init__(self, message, required_points):
        super().__init__(f"{message}; at least {required_points} points are required")
        self.required_points = required_points


class ConfigError(GouypropError, ValueError):
    """Invalid or unknown key in a run configuration."""
