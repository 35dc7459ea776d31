"""Power-series evaluation of
:math:`E_{\\rho,\\mu}(z) = \\sum_k z^k / \\Gamma(\\mu + k/\\rho)`."""

from __future__ import annotations

import logging
import math
import sys

from mittag_leffler.errors import GammaOverflow, InvalidTol, NoConvergence
from mittag_leffler.gamma import REL_ACCURACY, recip_gamma_scaled
from mittag_leffler.params import TAU_INT, MLParameters, as_complex
from mittag_leffler.results import EvaluationResult, Method

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1.0e-12
DEFAULT_KMAX = 2000

#: ``condition_estimate`` above this triggers a cancellation warning.
CANCELLATION_WARNING = 1.0e6

#: Consecutive small terms required by the stopping rule.
STOP_RUN = 3

_EPS = sys.float_info.epsilon
_TINY = sys.float_info.min

# z^k is kept as mantissa * 2**exponent once it leaves this range
_RESCALE = 2.0**500


def _is_gamma_pole(w: complex) -> bool:
    if abs(w.imag) > TAU_INT or w.real > TAU_INT:
        return False
    return abs(w.real - round(w.real)) <= TAU_INT


def _scaled_term(zk: complex, zk_exp: int, w: complex) -> complex:
    g, g_exp = recip_gamma_scaled(w)
    prod = zk * g
    e = zk_exp + g_exp
    if e == 0:
        return prod
    return complex(math.ldexp(prod.real, e), math.ldexp(prod.imag, e))


def eval_series(params: MLParameters, z: complex, tol: float = DEFAULT_TOL,
                kmax: int = DEFAULT_KMAX) -> EvaluationResult:
    """Sum the defining series until :data:`STOP_RUN` consecutive terms satisfy
    ``|t_k| <= tol * max(|S_k|, 1)``.

    Terms that vanish because ``mu + k/rho`` is a pole of the gamma function
    neither advance nor reset the stopping run: ``mu = -3`` has four leading
    zero terms and must not stop at ``k = 2``.

    The error estimate is the last term, a geometric tail bound when the term
    ratio is below one, and a rounding term proportional to the sum of
    absolute values of the terms.
    """
    z = as_complex(z)
    if not tol > 0:
        raise InvalidTol(f"tol must be positive, got {tol}")
    if kmax < 1:
        raise InvalidTol(f"kmax must be at least 1, got {kmax}")

    mu = params.mu
    inv_rho = 1.0 / params.rho

    total = 0j
    abs_sum = 0.0
    zk = 1.0 + 0j  # z^k = zk * 2**zk_exp
    zk_exp = 0
    run = 0
    last = 0.0
    prev = 0.0
    k = 0
    converged = False
    while k <= kmax:
        w = mu + k * inv_rho
        if _is_gamma_pole(w):
            term = 0j
            pole = True
        else:
            try:
                term = _scaled_term(zk, zk_exp, w)
            except (OverflowError, GammaOverflow) as exc:
                raise NoConvergence(
                    f"series term overflowed at k={k} for z={z}") from exc
            pole = False
        total += term
        mag = abs(term)
        abs_sum += mag

        if not pole:
            if mag <= tol * max(abs(total), 1.0):
                run += 1
            else:
                run = 0
            prev, last = last, mag
            if run >= STOP_RUN:
                converged = True
                break
        if not math.isfinite(abs_sum):
            raise NoConvergence(f"series overflowed at k={k} for z={z}")

        zk *= z
        mag_zk = abs(zk)
        if mag_zk > _RESCALE or 0 < mag_zk < 1.0 / _RESCALE:
            # power-of-two scaling is exact, so conjugate symmetry survives
            shift = math.frexp(mag_zk)[1]
            zk = complex(math.ldexp(zk.real, -shift), math.ldexp(zk.imag, -shift))
            zk_exp += shift
        k += 1

    if not converged:
        raise NoConvergence(
            f"series did not converge within kmax={kmax} terms for z={z}")

    tail = last
    if prev > 0:
        ratio = last / prev
        if ratio < 1.0:
            tail += last * ratio / (1.0 - ratio)
    roundoff = (REL_ACCURACY + 4.0 * (k + 1) * _EPS) * abs_sum
    condition = abs_sum / max(abs(total), _TINY)

    notes: tuple[str, ...] = ()
    if condition > CANCELLATION_WARNING:
        msg = (f"series cancellation: condition estimate {condition:.3g} "
               f"for |z|={abs(z):.6g}")
        logger.warning(msg)
        notes = (msg,)

    return EvaluationResult(
        value=total,
        abs_err_est=tail + roundoff,
        method=Method.SERIES,
        diagnostics={
            "terms_used": float(k + 1),
            "condition_estimate": condition,
        },
        notes=notes,
    )
