"""Exception types shared across the suite."""


class WbanError(Exception):
    """Base class for all errors raised by this package."""


class CodecError(WbanError, ValueError):
    """A bitstring cannot be serialized or deserialized as requested."""


class WidthMismatchError(WbanError, ValueError):
    """Two bitstrings (or a bitstring and a configured width) disagree."""


class ZeroStateError(WbanError, ValueError):
    """An LFSR register reached or was given the forbidden all-zero state."""


class AlarmLatchedError(WbanError, RuntimeError):
    """The sender alarm is latched; the link needs an administrator reset."""


class SensorAsleepError(WbanError, RuntimeError):
    """A sleeping sensor was asked to transmit."""


class RefreshPendingError(WbanError, RuntimeError):
    """A table refresh was requested while an earlier one is unacknowledged."""


class ScenarioError(WbanError, ValueError):
    """A simulation scenario or script is malformed."""
