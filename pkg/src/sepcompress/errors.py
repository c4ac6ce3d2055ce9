"""Exception hierarchy shared by every module of the package."""


class SepCompressError(Exception):
    """Base class for all package errors."""


class ContractError(SepCompressError, ValueError):
    """An input violates a documented precondition."""


class ParseError(ContractError):
    """A file could not be parsed; the message names the offending location."""


class DomainError(ContractError):
    """A bound formula was evaluated outside the region where it is defined."""


class NotSeparable(SepCompressError):
    """The convex hulls of the two classes intersect (or nearly do)."""


class IterationLimit(SepCompressError):
    """The nearest-point solver ran out of iterations.

    The best witness found so far is kept on ``self.witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
