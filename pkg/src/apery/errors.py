"""Exception hierarchy shared by all evaluators."""


class AperyError(Exception):
    """Base class for errors raised by this package."""


class DomainError(AperyError, ValueError):
    """A parameter lies outside the domain of an identity or function."""


class CapacityError(AperyError):
    """A request exceeds the configured limits of a table."""


class ContractError(AperyError):
    """An input violates the precondition of an algorithm (e.g. non-alternating terms)."""


class AccuracyNotReached(AperyError):
    """An iterative evaluator stopped before meeting its accuracy target.

    The best available value and its error bound travel with the exception so
    callers can report them instead of discarding the work.
    """

    def __init__(self, message, value=None, bound=None):
        super().__init__(message)
        self.value = value
        self.bound = bound
