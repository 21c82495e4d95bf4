"""Exceptions raised by spdmean."""


class SpdMeanError(Exception):
    """Base class for all errors raised by this package."""


class NotPositiveDefinite(SpdMeanError, ValueError):
    """A matrix expected to be symmetric positive definite is not."""


class NotSymmetric(SpdMeanError, ValueError):
    pass


class SingularFactor(SpdMeanError, ValueError):
    """A triangular factor has a zero on its diagonal."""


class SizeOverflow(SpdMeanError, ValueError):
    """A dense Kronecker-sized intermediate would exceed the size limit."""


class ModulusOutOfRange(SpdMeanError, ValueError):
    pass


class ParamOutOfRange(SpdMeanError, ValueError):
    pass


class UnknownAlgorithm(SpdMeanError, ValueError):
    pass


class NoConvergence(SpdMeanError, ArithmeticError):
    """An iteration hit its step limit.

    The partial result and the convergence history are attached so that
    callers can still report them.
    """

    def __init__(self, message, result=None, trace=None):
        super().__init__(message)
        self.result = result
        self.trace = trace


class Diverged(NoConvergence):
    """An iteration reached its accuracy floor and then started to drift away."""
