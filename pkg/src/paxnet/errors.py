"""Exception hierarchy shared by the whole pipeline.

Each error family maps to a distinct CLI exit code so shell scripts can
tell a bad config from a failed ROI detection.
"""


class PaxnetError(Exception):
    """Base class; `exit_code` drives the CLI exit status."""

    exit_code = 1


class ConfigError(PaxnetError, ValueError):
    """Bad parameter value, unknown config key, or malformed config file."""

    exit_code = 2


class ShapeError(ConfigError):
    """Tensor/array shapes incompatible with the requested operation."""


class DataError(PaxnetError):
    """Dataset problems: empty set, single-class labels, missing files."""

    exit_code = 3


class RoiDetectionError(PaxnetError):
    """ROI extraction failed; `stage` names the boundary that was not found."""

    exit_code = 4

    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


class IsolationError(PaxnetError):
    """Tooth isolation produced too few separator lines to crop anything."""

    exit_code = 5


class NumericError(PaxnetError):
    """Numeric failure during training (NaN loss, divergence)."""

    exit_code = 6


class SlopeNotFoundError(ConfigError):
    """No significant slope in a projection profile (raised by imgproc,
    usually wrapped into RoiDetectionError by the caller)."""
