"""Exception hierarchy.

Every error raised by the package derives from :class:`MittagLefflerError`.
The CLI maps the four families below onto its exit codes.
"""

from __future__ import annotations


class MittagLefflerError(Exception):
    """Base class for all package errors."""


# {{{ invalid parameters (CLI exit 2)


class InvalidParameter(MittagLefflerError, ValueError):
    """An input is outside the admissible domain."""


class RhoOutOfRange(InvalidParameter):
    pass


class DeltaOutOfRange(InvalidParameter):
    pass


class EpsilonNonPositive(InvalidParameter):
    pass


class InvalidTol(InvalidParameter):
    pass


class ZeroModulus(InvalidParameter):
    pass


class ZeroArgument(InvalidParameter):
    pass


class NonFinite(InvalidParameter):
    pass


class MethodUnavailable(InvalidParameter):
    """An explicitly requested method cannot be applied to the input."""

    def __init__(self, message: str, *, sector: bool = False) -> None:
        super().__init__(message)
        #: True when the cause is a sector/contour violation rather than
        #: an out-of-range parameter.
        self.sector = sector


# }}}

# {{{ contour geometry (CLI exit 3)


class ContourError(MittagLefflerError):
    """The requested contour or sector cannot be used."""


class EmptySector(ContourError):
    pass


class SectorViolation(ContourError):
    pass


class NoDecay(ContourError):
    pass


class TruncationTooSmall(ContourError):
    pass


class PoleContact(ContourError):
    pass


# }}}

# {{{ numerical failures (CLI exit 4)


class ConvergenceError(MittagLefflerError, ArithmeticError):
    pass


class NoConvergence(ConvergenceError):
    pass


class DepthExceeded(ConvergenceError):
    """Adaptive quadrature hit its depth cap.

    The partial result is kept so callers can decide whether it is usable.
    """

    def __init__(self, message: str, value: complex, abs_err_est: float,
                 panels: int) -> None:
        super().__init__(message)
        self.value = value
        self.abs_err_est = abs_err_est
        self.panels = panels


class IntegrandOverflow(ConvergenceError, OverflowError):
    pass


class GammaOverflow(ConvergenceError, OverflowError):
    pass


class InternalInconsistency(ConvergenceError):
    pass


# }}}
