"""Exception types shared across the package."""


class CmurError(Exception):
    """Base class for all library errors."""


class DomainError(CmurError, ValueError):
    """A parameter is outside its allowed range."""


class ShapeError(CmurError, ValueError):
    """Operands have incompatible or unexpected dimensions."""


class UnsupportedDimensionError(ShapeError):
    """The operation is only defined for two-qubit systems."""


class ConfigError(CmurError):
    """A run configuration (flags or file) could not be parsed."""
