"""Exception hierarchy shared by all gcfx modules."""


class GCFError(Exception):
    """Base class for every error raised by gcfx."""


class InvalidCoefficientError(GCFError, ValueError):
    """A partial numerator or denominator is not a positive integer (or rational)."""


class InvalidScalingError(GCFError, ValueError):
    pass


class InvalidMapError(GCFError, ValueError):
    pass


class InvalidValueError(GCFError, ValueError):
    pass


class DomainError(GCFError, ValueError):
    pass


class FamilyParamError(GCFError, ValueError):
    pass


class ConditionViolatedError(GCFError):
    """A theorem's hypothesis fails, so no bound can be produced.

    ``report`` carries the :class:`~gcfx.bounds.BoundReport` when one exists.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonConvergenceError(GCFError):
    """The enclosure did not shrink to the requested width within ``max_terms``."""

    def __init__(self, message, enclosure=None):
        super().__init__(message)
        self.enclosure = enclosure


class ResourceLimitError(GCFError):
    """A denominator exceeded the configured bit-length cap."""


class TieUnresolvedError(GCFError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NeedsMorePrecisionError(GCFError):
    """The available enclosure is too wide to decide an inequality."""
