"""Contour-integral evaluation and the residue calculus for ``rho = 1``.

For ``rho = 1`` and integer ``mu = n`` the integrand is single valued in
:math:`\\zeta`, the two rays cancel and the arc closes into a circle of
radius ``1 + epsilon`` around both singular points.  The integral is then
``2 pi i`` times the sum of the residues at :math:`\\zeta = 1` and, for
``n >= 2``, at :math:`\\zeta = 0`, which yields the elementary closed forms.
"""

from __future__ import annotations

import cmath
import enum
import math
import numbers
import sys
from dataclasses import dataclass

from mittag_leffler.contour import build_contour, truncation_radius
from mittag_leffler.errors import (
    InternalInconsistency,
    IntegrandOverflow,
    InvalidTol,
    PoleContact,
    SectorViolation,
    ZeroArgument,
    ZeroModulus,
)
from mittag_leffler.params import (
    ContourSpec,
    MLParameters,
    PolarPoint,
    as_complex,
    sector_bounds,
    z_in_sector,
)
from mittag_leffler.quadrature import integrate_path
from mittag_leffler.results import EvaluationResult, Method

_EPS = sys.float_info.epsilon
_TWO_PI_I = 2j * math.pi

#: Share of the requested tolerance reserved for the two ray tails.
TAIL_SHARE = 0.125


class ResidueLocation(enum.Enum):
    AT_ZERO = "at_zero"
    AT_ONE = "at_one"


@dataclass(frozen=True)
class ResidueValue:
    """A residue of the integrand, *not* multiplied by ``2 pi i``."""

    value: complex
    location: ResidueLocation


def eval_integral(params: MLParameters, z: PolarPoint, spec: ContourSpec,
                  tol: float = 1.0e-10) -> EvaluationResult:
    """Evaluate :math:`E_{\\rho,\\mu}(z)` by quadrature along the contour.

    *z* is taken on its declared angle, which must lie strictly inside the
    sector of *spec*.  *tol* is an absolute tolerance shared between the
    three contour pieces and the discarded ray tails.  When the integrand
    is so large on the arc that rounding dominates, the returned estimate
    reflects that and ``diagnostics["roundoff_limited"]`` is 1.
    """
    if not tol > 0:
        raise InvalidTol(f"tol must be positive, got {tol}")
    if z.radius == 0:
        raise ZeroModulus("the integral representation needs z != 0")

    sector = sector_bounds(params, spec)
    if not z_in_sector(z, sector):
        raise SectorViolation(
            f"arg z = {z.angle:.17g} is outside the sector "
            f"({sector.lower:.17g}, {sector.upper:.17g})")

    r_trunc = truncation_radius(params, z, spec, TAIL_SHARE * tol)
    path = build_contour(params, spec, r_trunc)
    out = integrate_path(params, z, path, tol)

    notes: tuple[str, ...] = ()
    if out.roundoff_limited:
        notes = (f"rounding-limited: the integrand reaches "
                 f"{out.abs_integral:.3g} in total magnitude along the contour",)
    return EvaluationResult(
        value=out.value,
        abs_err_est=out.abs_err_est,
        method=Method.INTEGRAL,
        diagnostics={
            "panels": float(out.panels),
            "truncation_radius": r_trunc,
            "tail_bound": out.tail_bound,
            "integrand_scale": out.abs_integral,
            "roundoff_limited": float(out.roundoff_limited),
        },
        notes=notes,
    )


def residue_at_one(params: MLParameters, z: PolarPoint) -> ResidueValue:
    """Residue at :math:`\\zeta = 1`:
    :math:`\\rho/(2\\pi i) \\exp\\{z^\\rho\\} z^{\\rho(1-\\mu)}` on the declared
    angle of *z*."""
    if z.radius == 0:
        raise ZeroModulus("residue at 1 needs z != 0")
    rho = params.rho
    log_t = math.log(z.radius)
    psi = z.angle
    w = rho * (1.0 - params.mu)
    exponent = (z.radius**rho * cmath.exp(1j * rho * psi)
                + w * complex(log_t, psi))
    if exponent.real > 700.0:
        raise IntegrandOverflow(f"exp({exponent.real:.6g}) overflows")
    return ResidueValue(rho / _TWO_PI_I * cmath.exp(exponent),
                        ResidueLocation.AT_ONE)


def _check_order(n: object) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    return int(n)


def deriv_exp_over_linear(n: int, z: complex, zeta: complex) -> complex:
    """*n*-th derivative in :math:`\\zeta` of :math:`e^{\\zeta z}/(\\zeta - 1)`.

    .. math::

        e^{\\zeta z} \\sum_{k=0}^{n} (-1)^{n-k} \\frac{n!}{k!}
        \\frac{z^k}{(\\zeta - 1)^{n+1-k}}
    """
    n = _check_order(n)
    if n < 0:
        raise ValueError(f"derivative order must be >= 0, got {n}")
    z = as_complex(z)
    zeta = as_complex(zeta, "zeta")
    d = zeta - 1.0
    if d == 0:
        raise PoleContact("derivative is singular at zeta = 1")

    # term_0 = (-1)^n n! / d^(n+1);  term_{k+1} = -term_k z d / (k+1)
    term = (-1) ** n * math.factorial(n) / d ** (n + 1)
    total = term
    for k in range(n):
        term = -term * z * d / (k + 1)
        total += term
    return cmath.exp(zeta * z) * total


def _exp_partial_sum(z: complex, m: int) -> tuple[complex, float]:
    """``sum_{k<m} z^k/k!`` and ``sum_{k<m} |z^k/k!|``."""
    term = 1.0 + 0j
    total = 0j
    mag = 0.0
    for k in range(m):
        if k:
            term *= z / k
        total += term
        mag += abs(term)
    return total, mag


def residue_at_zero_rho1(m2: int, z: complex) -> ResidueValue:
    """Residue at :math:`\\zeta = 0` for ``rho = 1``, ``mu = 1 + m2``.

    Computed from the limit formula
    ``z^{-m2} / (2 pi i (m2-1)!) * D_{m2-1}(z, 0)`` with
    :func:`deriv_exp_over_linear`, and checked against the explicit
    ``-z^{-m2}/(2 pi i) sum_{k<m2} z^k/k!``.

    :raises InternalInconsistency: if the two differ by more than ``1e-12``
        relative to the magnitude of the sum's terms.
    """
    m2 = _check_order(m2)
    if m2 < 1:
        raise ValueError(f"pole order must be >= 1, got {m2}")
    z = as_complex(z)
    if z == 0:
        raise ZeroArgument("residue at 0 needs z != 0")

    z_pow = z ** (-m2)
    limit = z_pow / (_TWO_PI_I * math.factorial(m2 - 1)) * deriv_exp_over_linear(
        m2 - 1, z, 0j)

    partial, mag = _exp_partial_sum(z, m2)
    explicit = -z_pow / _TWO_PI_I * partial
    scale = abs(z_pow) * mag / (2.0 * math.pi)
    if abs(limit - explicit) > 1.0e-12 * scale:
        raise InternalInconsistency(
            f"residue at 0 disagrees between the derivative formula "
            f"({limit}) and the explicit sum ({explicit})")
    return ResidueValue(limit, ResidueLocation.AT_ZERO)


def eval_closed_form_rho1(n: int, z: complex) -> EvaluationResult:
    """Closed form of :math:`E_{1,n}(z)` for integer *n*.

    ``e^z z^{1-n}`` for ``n <= 1`` and ``z^{1-n}(e^z - sum_{k<=n-2} z^k/k!)``
    for ``n >= 2``.  The formulas hold for every ``z`` (they also follow
    from re-indexing the series), so the contour sector
    ``pi/2 < arg z < 3 pi/2`` is only recorded in ``diagnostics``.
    """
    n = _check_order(n)
    z = as_complex(z)
    if z == 0:
        if n != 1:
            raise ZeroArgument(f"closed form for n={n} needs z != 0")
        return EvaluationResult(1.0 + 0j, 0.0, Method.CLOSED_FORM,
                                {"in_closed_form_sector": 0.0})

    ez = cmath.exp(z)
    if n <= 1:
        value = ez * z ** (1 - n)
        err = (3 + abs(1 - n)) * _EPS * abs(value)
    else:
        partial, mag = _exp_partial_sum(z, n - 1)
        scale = abs(z) ** (1 - n)
        value = z ** (1 - n) * (ez - partial)
        err = (4 * _EPS * (abs(ez) + mag) * scale
               + (n + 2) * _EPS * abs(value))

    angle = cmath.phase(z)
    if angle < 0:
        angle += 2.0 * math.pi
    inside = math.pi / 2 < angle < 1.5 * math.pi
    notes = () if inside else (
        "arg z is outside (pi/2, 3pi/2); the formula is still exact there",)
    return EvaluationResult(value, err, Method.CLOSED_FORM,
                            {"in_closed_form_sector": float(inside)}, notes)
