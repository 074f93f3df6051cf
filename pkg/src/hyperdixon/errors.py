"""Exception hierarchy shared by every hyperdixon module."""


class HyperError(Exception):
    """Base class for all library errors."""


class PoleError(HyperError, ValueError):
    """A Gamma argument (or a printed rational coefficient) sits on a pole.

    ``argument`` holds the offending value and ``label`` names where it came
    from, so grid sweeps can record *why* a point was skipped.
    """

    def __init__(self, message: str, argument: float | None = None, label: str = ""):
        super().__init__(message)
        self.argument = argument
        self.label = label


class IndeterminateError(HyperError, ValueError):
    """A Gamma quotient has poles in both numerator and denominator (0/0)."""


class CoefficientPoleError(PoleError):
    """A printed rational coefficient of a special case has a zero denominator."""


class DomainError(HyperError, ValueError):
    """Argument outside the region where the series or transform is defined."""


class DivisionByZeroError(HyperError, ZeroDivisionError):
    """A denominator Pochhammer factor vanishes before the series terminates."""


class NotTerminatingError(HyperError, ValueError):
    """A terminating evaluation was requested for a non-terminating series."""


class UnsupportedPairError(HyperError, ValueError):
    """The (i, j) offset pair has no coefficient table entry."""


class ConfigError(HyperError, ValueError):
    """A verification grid is malformed or names an unknown identity."""
