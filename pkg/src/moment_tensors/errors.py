"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Extents, mode sets, or dimensions do not line up."""


class GuardError(ValueError):
    """A size or enumeration guard was exceeded."""


class ParameterError(ValueError):
    """Distribution parameters are invalid (asymmetric, non-PSD, singular)."""
