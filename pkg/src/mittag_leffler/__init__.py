"""Evaluation of the two-parameter Mittag-Leffler function
:math:`E_{\\rho,\\mu}(z) = \\sum_k z^k / \\Gamma(\\mu + k/\\rho)`.

Three backends (power series, contour-integral quadrature and, for
``rho = 1`` with integer ``mu``, residue closed forms) are selected by
:func:`evaluate` and compared by :func:`cross_check`.
"""

from __future__ import annotations

import logging

from mittag_leffler.dispatch import CrossCheckReport, cross_check, evaluate
from mittag_leffler.errors import (
    ContourError,
    ConvergenceError,
    InvalidParameter,
    MethodUnavailable,
    MittagLefflerError,
)
from mittag_leffler.gamma import recip_gamma
from mittag_leffler.integral import eval_closed_form_rho1, eval_integral
from mittag_leffler.params import (
    ContourSpec,
    MLParameters,
    PolarPoint,
    classify_singularities,
    default_contour,
    validate_contour,
)
from mittag_leffler.results import EvaluationResult, Method, MethodChoice, Requested
from mittag_leffler.series import eval_series

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "ContourError",
    "ContourSpec",
    "ConvergenceError",
    "CrossCheckReport",
    "EvaluationResult",
    "InvalidParameter",
    "MLParameters",
    "Method",
    "MethodChoice",
    "MethodUnavailable",
    "MittagLefflerError",
    "PolarPoint",
    "Requested",
    "classify_singularities",
    "cross_check",
    "default_contour",
    "eval_closed_form_rho1",
    "eval_integral",
    "eval_series",
    "evaluate",
    "recip_gamma",
    "validate_contour",
]
