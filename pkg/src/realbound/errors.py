"""Exception types shared across the package."""


class RealboundError(Exception):
    """Base class for all package-specific errors."""


class DomainValidityError(RealboundError):
    """A point lies outside the region where an object is defined."""


class TruncationError(RealboundError):
    """A truncated series is too short for the requested operation."""


class NearZeroDivisionError(RealboundError):
    """Leading coefficient too small to invert a series stably."""


class ContourError(RealboundError):
    """An integration contour leaves the analyticity region."""


class HypothesisViolationError(RealboundError):
    """A sampled hypothesis (positivity, image containment) fails."""


class DegenerateGeometryError(RealboundError):
    """Geometric input is degenerate (collinear hull, empty region)."""


class PhaseUndefinedError(RealboundError):
    """Phase alignment requested for the zero vector."""


class NumericalError(RealboundError):
    """A numerical consistency check failed (quadrature, monotonicity)."""


class ConfigError(RealboundError):
    """Invalid experiment configuration or CLI usage."""
