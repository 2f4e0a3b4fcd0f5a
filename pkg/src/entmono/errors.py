"""Exception hierarchy shared by all entmono modules."""


class EntmonoError(Exception):
    """Base class for every error raised by this package."""


class EmptyInput(EntmonoError, ValueError):
    pass


class NegativeCoefficient(EntmonoError, ValueError):
    pass


class NotNormalized(EntmonoError, ValueError):
    pass


class TargetShorterThanInput(EntmonoError, ValueError):
    pass


class NotComparableInDirection(EntmonoError, ValueError):
    pass


class RankExceedsDims(EntmonoError, ValueError):
    pass


class NotSymmetric(EntmonoError, ValueError):
    pass


class NoConvergence(EntmonoError, RuntimeError):
    pass


class InfeasibleTarget(EntmonoError, ValueError):
    pass


class NoOverlap(EntmonoError, ValueError):
    pass


class PropertyViolation(EntmonoError, AssertionError):
    """A checked mathematical property failed; ``pair`` holds the offending inputs."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
