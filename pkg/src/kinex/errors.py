"""Exception types shared across the package."""


class KinexError(Exception):
    """Base class for all kinex-specific errors."""


class InvalidConfig(KinexError, ValueError):
    """A simulation or sweep configuration violates its domain constraints."""


class ZeroTotalWealth(KinexError, ValueError):
    """Total wealth is zero; Gini index and Lorenz curve are undefined."""


class ConservationError(KinexError, RuntimeError):
    """Total wealth drifted beyond the allowed relative tolerance."""


class DegenerateInput(KinexError, ValueError):
    """Fit input cannot identify the model (too few or indistinct points)."""


class NonpositiveX(KinexError, ValueError):
    """Logarithmic fit received x <= 0."""


class EmptyInput(KinexError, ValueError):
    """An aggregation was asked for on an empty row set."""


class GridConfigError(KinexError, ValueError):
    """A sweep-grid JSON document failed validation.

    ``path`` points at the offending key, e.g. ``"lambda[0]"``.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
