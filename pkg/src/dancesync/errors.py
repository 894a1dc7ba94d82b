"""Exception taxonomy shared by the core package, the service, and the CLI.

The class name doubles as the machine-readable ``error`` field in service
responses, so names are part of the wire contract.
"""


class DanceSyncError(Exception):
    """Base class for all domain errors."""


class ParseError(DanceSyncError):
    """Input document could not be read or decoded."""


class SchemaError(DanceSyncError):
    """Document decoded but has missing fields, unknown names, or bad enums."""


class ValidationError(DanceSyncError):
    """Document is well-formed but violates a data invariant."""


class IoError(DanceSyncError):
    """Output could not be written."""


class InvalidConfigError(DanceSyncError):
    """Synthesis configuration out of range."""


class MetricError(DanceSyncError):
    """Base class for errors raised while computing a metric."""


class EmptySeriesError(MetricError):
    pass


class NonFiniteSampleError(MetricError):
    pass


class EmptyInputSetError(MetricError):
    pass


class SizeLimitExceededError(MetricError):
    pass


class DegenerateSegmentError(MetricError):
    pass


class NoValidFramesError(MetricError):
    pass


class ZeroVectorError(MetricError):
    pass


class TooFewPerformersError(MetricError):
    pass


class NoValidSamplesError(MetricError):
    pass


class FlatTrajectoryError(MetricError):
    pass


class LengthMismatchError(MetricError):
    pass


class ShiftTooLargeError(MetricError):
    pass
