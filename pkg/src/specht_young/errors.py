"""Exception hierarchy shared by all modules."""


class SpechtYoungError(Exception):
    """Base class for errors raised by this package."""


class InputError(SpechtYoungError, ValueError):
    """Malformed arguments: wrong shapes, bad counts, weights not summing to one."""


class DomainError(SpechtYoungError, ValueError):
    """A value lies outside the mathematical domain (non-positive, non-finite, ...)."""


class NumericError(SpechtYoungError, ArithmeticError):
    """An iterative routine failed to converge."""


class ConditionError(SpechtYoungError, ValueError):
    """Spectral separation hypotheses are not satisfied."""
