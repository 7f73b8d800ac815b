"""Exception types shared across the package."""


class SynthMinerError(Exception):
    """Base class for all errors raised by this package."""


class LogParseError(SynthMinerError):
    """Raised when an event-log file cannot be parsed.

    ``line`` and ``column`` are set when the underlying XML parser
    reports a position, otherwise they are None.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(SynthMinerError):
    """Raised for invalid configuration, e.g. a missing CSV column."""


class NetStructureError(SynthMinerError):
    """Raised when a net violates a structural invariant (bipartiteness,
    workflow-net source/sink conditions, ...)."""


class RuleRejected(SynthMinerError):
    """Raised when a synthesis rule's precondition does not hold."""


class BudgetExceeded(SynthMinerError):
    """Raised when an exhaustive check runs past its exploration budget."""


class DiscoveryAborted(SynthMinerError):
    """Raised when the miner cannot produce any candidate for an activity."""

    def __init__(self, message, iteration=None, activity=None):
        super().__init__(message)
        self.iteration = iteration
        self.activity = activity
