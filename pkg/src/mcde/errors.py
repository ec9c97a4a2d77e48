"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Copula parameter outside the family's admissible range."""


class InputError(ValueError):
    """Malformed data: NaNs, wrong shape, values outside the unit cube."""


class BoundaryError(ValueError):
    """Evaluation requested at a boundary point where the quantity is undefined."""


class UnsupportedOperationError(NotImplementedError):
    """Operation not implemented for this (family, dimension) combination."""


class UsageError(ValueError):
    """API misuse: missing required argument or ill-posed request."""


class ConfigError(ValueError):
    """Invalid scenario or cross-validation configuration."""
