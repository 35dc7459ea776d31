"""Complex reciprocal gamma function.

:func:`recip_gamma` is entire, so it is the natural primitive for series
terms: the reciprocal vanishes exactly at the poles of :math:`\\Gamma`, and
those terms drop out of a sum without special casing.

The kernel is a Lanczos approximation with ``g = 607/128`` and fifteen
coefficients (P. Godfrey's choice of ``g``, also used by Numerical Recipes,
3rd ed.).  The coefficients were regenerated for this module by
interpolating the exact Lanczos sum at ``z = 0..14`` in 60-digit arithmetic
and rounding to double; the approximation error is below ``4e-15`` on
``Re w >= 0.5``.  The kernel is applied on ``0.5 <= Re w < 8``.  Larger
real parts are brought into that strip with the recurrence
``1/Gamma(w+1) = 1/(w Gamma(w))``, and
``Re w < 0.5`` uses the reflection formula with an exactly reduced
``sin(pi w)``.
"""

from __future__ import annotations

import cmath
import math

from mittag_leffler.errors import GammaOverflow
from mittag_leffler.params import TAU_INT, as_complex

#: Largest ``|w|`` for which the accuracy bound below is documented.
MAX_ABS_ARG = 170.0

#: Relative accuracy bound on ``|w| <= MAX_ABS_ARG`` (checked against an
#: arbitrary-precision reference in ``tests/test_gamma.py``).
REL_ACCURACY = 1.0e-13

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.9999999999999971,
    57.15623566586292,
    -59.59796035547549,
    14.136097974741746,
    -0.4919138160976202,
    3.399464998481189e-05,
    4.652362892704858e-05,
    -9.837447530487956e-05,
    0.0001580887032249125,
    -0.00021026444172410488,
    0.00021743961811521265,
    -0.0001643181065367639,
    8.441822398385275e-05,
    -2.6190838401581408e-05,
    3.6899182659531625e-06,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

_STRIP_HI = 8.0

# positive integers up to here get 1/(n-1)! correctly rounded
_EXACT_FACTORIAL = 171


_SPLIT = 134217729.0  # 2**27 + 1
_PI_LO = 1.2246467991473532e-16  # pi - math.pi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """Error-free product ``a*b = p + e`` (Dekker)."""
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _log_gamma_strip(w: complex) -> tuple[complex, complex]:
    """``log Gamma(w)`` for ``Re w >= 0.5`` as an unevaluated sum ``hi + lo``.

    The exponent reaches ``|w| log|w|`` in magnitude, so it is accumulated
    with exact products; otherwise its rounding alone costs ~1e-13 relative
    accuracy at ``|w| ~ 100``.
    """
    x = w - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    log_t = cmath.log(t)
    log_acc = cmath.log(acc)

    a, b = x.real + 0.5, x.imag
    p1, e1 = _two_prod(a, log_t.real)
    p2, e2 = _two_prod(b, log_t.imag)
    p3, e3 = _two_prod(a, log_t.imag)
    p4, e4 = _two_prod(b, log_t.real)
    re = [p1, e1, -p2, -e2, -t.real, _HALF_LOG_2PI, log_acc.real]
    im = [p3, e3, p4, e4, -t.imag, log_acc.imag]
    re_hi = math.fsum(re)
    im_hi = math.fsum(im)
    return complex(re_hi, im_hi), complex(math.fsum([*re, -re_hi]),
                                          math.fsum([*im, -im_hi]))


def _recip_gamma_strip(w: complex) -> complex:
    hi, lo = _log_gamma_strip(w)
    return cmath.exp(-hi) * (1.0 - lo)


def _sinpi(w: complex) -> complex:
    """``sin(pi w)`` with the real part reduced exactly to ``[-1/2, 1/2]``."""
    n = round(w.real)
    f = w.real - n
    s = math.sin(math.pi * f)
    c = math.cos(math.pi * f)
    if n % 2:
        s, c = -s, -c
    # pi*Im(w) reaches ~500; carry its rounding error into cosh/sinh
    y, dy = _two_prod(math.pi, w.imag)
    dy += _PI_LO * w.imag
    ch, sh = math.cosh(y), math.sinh(y)
    return complex(s * (ch + dy * sh), c * (sh + dy * ch))


def _recip_gamma_right(w: complex) -> complex:
    # Re w >= 0.5
    if w.real < _STRIP_HI:
        return _recip_gamma_strip(w)

    shift = int(math.floor(w.real - _STRIP_HI)) + 1
    w0 = w - shift
    r = _recip_gamma_strip(w0)
    for k in range(shift):
        r /= w0 + k
    return r


_LN2 = math.log(2.0)


def recip_gamma_scaled(w: complex | float) -> tuple[complex, int]:
    """``(m, e)`` with ``1/Gamma(w) = m * 2**e``.

    Identical to ``(recip_gamma(w), 0)`` wherever that is representable;
    beyond, for ``Re w >= 0.5``, the Lanczos exponent is split into a binary
    exponent and a mantissa, so series terms with ``|w|`` in the hundreds
    can still be formed.  Accuracy there degrades like ``|log Gamma(w)| eps``.
    """
    w = as_complex(w, "w")
    try:
        value = recip_gamma(w)
    except GammaOverflow:
        if w.real < 0.5:
            raise
    else:
        # exact zeros at the poles, or representable without scaling
        if w.real < 0.5 or abs(value) > 1.0e-290:
            return value, 0

    hi, lo = _log_gamma_strip(w)
    # 1/Gamma = exp(-hi) (1 - lo); pull 2**e out of exp(-hi.real)
    e = int(math.floor(-hi.real / _LN2))
    p, dp = _two_prod(float(e), _LN2)
    rest = math.fsum([-hi.real, -p, -dp])
    m = cmath.exp(complex(rest, -hi.imag)) * (1.0 - lo)
    return m, e


def recip_gamma(w: complex | float) -> complex:
    """Evaluate :math:`1/\\Gamma(w)` for complex *w*.

    Returns exactly ``0j`` when *w* lies within ``TAU_INT`` of a non-positive
    integer on the real axis.

    :raises GammaOverflow: when the result is not representable, which can
        only happen for ``|w|`` beyond :data:`MAX_ABS_ARG`.
    """
    w = as_complex(w, "w")

    if abs(w.imag) <= TAU_INT:
        n = round(w.real)
        if w.real <= TAU_INT and abs(w.real - n) <= TAU_INT:
            return 0j

        if w.imag == 0.0 and n >= 1 and w.real == n and n <= _EXACT_FACTORIAL:
            return complex(1.0 / math.factorial(n - 1))

    try:
        if w.real >= 0.5:
            result = _recip_gamma_right(w)
        else:
            # 1/Gamma(w) = sin(pi w) Gamma(1 - w) / pi
            result = _sinpi(w) / (math.pi * _recip_gamma_right(1.0 - w))
    except (OverflowError, ZeroDivisionError) as exc:
        raise GammaOverflow(f"1/Gamma({w}) is not representable") from exc

    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise GammaOverflow(f"1/Gamma({w}) is not representable")
    return result
