"""The integration contour, the integrand and its three factors.

All powers of :math:`\\zeta z` are taken on the declared sheet: with
:math:`\\zeta = r e^{i\\varphi}` and :math:`z = t e^{i\\psi}`,

.. math::

    (\\zeta z)^p = (rt)^p e^{ip(\\varphi + \\psi)},

where neither angle is reduced modulo :math:`2\\pi`.  The contour itself
lives at angles below :math:`-\\pi`, so principal-branch arithmetic would be
wrong here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from mittag_leffler.errors import (
    IntegrandOverflow,
    NoDecay,
    PoleContact,
    TruncationTooSmall,
    ZeroModulus,
)
from mittag_leffler.params import ContourSpec, MLParameters, PolarPoint

#: Minimum admissible distance between a contour point and the pole at 1.
POLE_GUARD = 1.0e-9

#: Largest real exponent passed to ``exp``.
LOG_OVERFLOW = 700.0

#: A ray decays only if ``cos(rho (angle + arg z))`` is below ``-DECAY_FLOOR``;
#: exact sector boundaries otherwise round to a tiny negative cosine.
DECAY_FLOOR = 1.0e-12


# {{{ path


@dataclass(frozen=True)
class Ray:
    """Straight piece at a fixed declared angle, walked from ``r_from`` to
    ``r_to``."""

    angle: float
    r_from: float
    r_to: float

    @property
    def length(self) -> float:
        return abs(self.r_to - self.r_from)

    def point(self, s: float) -> PolarPoint:
        """Point at arclength *s* from the start."""
        step = s if self.r_to >= self.r_from else -s
        return PolarPoint(self.r_from + step, self.angle)


@dataclass(frozen=True)
class Arc:
    """Circular piece of fixed radius, counterclockwise from ``angle_from``."""

    radius: float
    angle_from: float
    angle_to: float

    @property
    def length(self) -> float:
        return self.radius * (self.angle_to - self.angle_from)

    def point(self, s: float) -> PolarPoint:
        return PolarPoint(self.radius, self.angle_from + s / self.radius)


@dataclass(frozen=True)
class ContourPath:
    """The truncated contour: inward ray ``s1``, arc, outward ray ``s2``."""

    s1: Ray
    arc: Arc
    s2: Ray
    r_trunc: float

    @property
    def pieces(self) -> tuple[Ray, Arc, Ray]:
        return (self.s1, self.arc, self.s2)

    @property
    def length(self) -> float:
        return sum(p.length for p in self.pieces)

    def sample(self, n: int) -> list[PolarPoint]:
        """*n* points equally spaced in arclength, starting at the outer end
        of ``s1``."""
        if n <= 0:
            return []
        if n == 1:
            return [self.s1.point(0.0)]

        total = self.length
        out = []
        for i in range(n):
            s = total * i / (n - 1)
            for piece in self.pieces:
                if s <= piece.length or piece is self.s2:
                    out.append(piece.point(min(s, piece.length)))
                    break
                s -= piece.length
        return out


def build_contour(params: MLParameters, spec: ContourSpec,
                  r_trunc: float) -> ContourPath:
    inner = 1.0 + spec.epsilon
    if not r_trunc > inner:
        raise TruncationTooSmall(
            f"truncation radius {r_trunc} must exceed 1 + epsilon = {inner}")

    lo = -spec.delta1 - math.pi
    hi = spec.delta2 - math.pi
    return ContourPath(
        s1=Ray(lo, r_trunc, inner),
        arc=Arc(inner, lo, hi),
        s2=Ray(hi, inner, r_trunc),
        r_trunc=r_trunc,
    )


# }}}


# {{{ integrand


def _power_parts(params: MLParameters, r, theta, t: float, psi: float):
    """Real exponent and phase of ``exp{(zeta z)^rho} (zeta z)^{rho(1-mu)}``.

    Works elementwise on arrays ``r``, ``theta``.
    """
    rho = params.rho
    a = rho * (1.0 - params.mu_re)
    b = rho * params.mu_im

    x = r * t
    ang = theta + psi
    xr = x**rho
    log_x = np.log(x)

    log_mag = xr * np.cos(rho * ang) + a * log_x + b * ang
    phase = xr * np.sin(rho * ang) + a * ang - b * log_x
    return log_mag, phase


def phi_values(params: MLParameters, r, theta, z: PolarPoint) -> np.ndarray:
    """Vectorized integrand on arrays of contour radii and angles."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if z.radius <= 0 or np.any(r <= 0):
        raise ZeroModulus("the integrand needs zeta * z != 0")

    zeta = r * np.exp(1j * theta)
    gap = np.abs(zeta - 1.0)
    if np.any(gap < POLE_GUARD):
        raise PoleContact("contour point within POLE_GUARD of zeta = 1")

    log_mag, phase = _power_parts(params, r, theta, z.radius, z.angle)
    peak = np.max(log_mag)
    if peak > LOG_OVERFLOW:
        raise IntegrandOverflow(
            f"integrand magnitude exp({peak:.6g}) overflows; "
            f"rho={params.rho}, |z|={z.radius}")

    scale = params.rho / (2.0 * math.pi)
    # rho / (2 pi i) = -i rho / (2 pi)
    return -1j * scale * np.exp(log_mag + 1j * phase) / (zeta - 1.0)


def f1(params: MLParameters, zeta: PolarPoint, z: PolarPoint) -> complex:
    """:math:`\\rho/(2\\pi i) \\exp\\{(\\zeta z)^\\rho\\}`."""
    rho = params.rho
    x = zeta.radius * z.radius
    ang = zeta.angle + z.angle
    re = x**rho * math.cos(rho * ang)
    im = x**rho * math.sin(rho * ang)
    if re > LOG_OVERFLOW:
        raise IntegrandOverflow(f"exp({re:.6g}) overflows")
    mag = math.exp(re)
    return complex(0.0, -rho / (2.0 * math.pi)) * complex(
        mag * math.cos(im), mag * math.sin(im))


def f2(params: MLParameters, zeta: PolarPoint, z: PolarPoint) -> complex:
    """:math:`(\\zeta z)^{\\rho(1-\\mu)}` on the declared sheet."""
    rho = params.rho
    a = rho * (1.0 - params.mu_re)
    b = rho * params.mu_im
    x = zeta.radius * z.radius
    ang = zeta.angle + z.angle
    if x == 0:
        if a <= 0:
            raise ZeroModulus("(zeta z)^{rho(1-mu)} is singular at zeta z = 0")
        return 0j

    log_x = math.log(x)
    log_mag = a * log_x + b * ang
    if log_mag > LOG_OVERFLOW:
        raise IntegrandOverflow(f"exp({log_mag:.6g}) overflows")
    mag = math.exp(log_mag)
    theta = a * ang - b * log_x
    return complex(mag * math.cos(theta), mag * math.sin(theta))


def f3(zeta: PolarPoint) -> complex:
    """:math:`(1 - \\zeta)^{-1}`.

    The integrand carries :math:`1/(\\zeta - 1)`, so
    ``phi_integrand == -f1 * f2 * f3``.
    """
    w = zeta.to_complex()
    if abs(w - 1.0) < POLE_GUARD:
        raise PoleContact("zeta is on the pole at 1")
    return 1.0 / (1.0 - w)


def phi_integrand(params: MLParameters, zeta: PolarPoint,
                  z: PolarPoint) -> complex:
    """The integrand
    :math:`\\rho/(2\\pi i) \\exp\\{(\\zeta z)^\\rho\\}
    (\\zeta z)^{\\rho(1-\\mu)}/(\\zeta - 1)` at one point."""
    return complex(phi_values(params, zeta.radius, zeta.angle, z))


# }}}


# {{{ truncation


def _decay_coefficient(params: MLParameters, ray_angle: float,
                       z: PolarPoint) -> float:
    return math.cos(params.rho * (ray_angle + z.angle))


def _ray_tail_log_prefactor(params: MLParameters, ray_angle: float,
                            z: PolarPoint, radius: float) -> tuple[float, float]:
    """Return ``(H, log P)`` such that the tail of ``|Phi|`` beyond *radius*
    is at most ``P * exp(-H)``.

    Along the ray, ``|zeta - 1| >= r - 1`` and substituting
    ``h = |c| (r t)^rho`` turns the tail into an upper incomplete gamma
    function ``Gamma(s, H)`` with ``s = 1 - mu_re``, bounded by
    ``H^{s-1} e^{-H}`` (times ``H / (H - s + 1)`` when ``s > 1``).
    """
    c = _decay_coefficient(params, ray_angle, z)
    mag_c = -c
    s = 1.0 - params.mu_re
    h = mag_c * (radius * z.radius) ** params.rho

    log_p = (params.rho * params.mu_im * (ray_angle + z.angle)
             + math.log(radius / (radius - 1.0))
             - s * math.log(mag_c)
             - math.log(2.0 * math.pi)
             + (s - 1.0) * math.log(h))
    if s > 1.0:
        if h <= 2.0 * (s - 1.0):
            return h, math.inf
        log_p += math.log(h / (h - (s - 1.0)))
    return h, log_p


def ray_tail_bound(params: MLParameters, ray_angle: float, z: PolarPoint,
                   radius: float) -> float:
    """Upper bound on ``int_radius^inf |Phi(r e^{i angle}, z)| dr``."""
    h, log_p = _ray_tail_log_prefactor(params, ray_angle, z, radius)
    return math.exp(min(log_p - h, LOG_OVERFLOW))


def _ray_truncation(params: MLParameters, ray_angle: float, z: PolarPoint,
                    tol_abs: float, r_min: float) -> float:
    log_tol = math.log(tol_abs)

    def ok(radius: float) -> bool:
        # (R t)^rho c <= ln(tol) - ln(1 + P)
        h, log_p = _ray_tail_log_prefactor(params, ray_angle, z, radius)
        if math.isinf(log_p):
            return False
        margin = math.log1p(math.exp(log_p)) if log_p < 700 else log_p
        return -h <= log_tol - margin

    if ok(r_min):
        return r_min
    hi = r_min
    while not ok(hi):
        hi *= 2.0
        if hi > 1.0e300:
            raise NoDecay("no truncation radius found")
    lo = hi / 2.0 if hi > r_min else r_min
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1.0e-12 * hi:
            break
    return hi


def truncation_radius(params: MLParameters, z: PolarPoint, spec: ContourSpec,
                      tol_abs: float) -> float:
    """Smallest radius beyond which each discarded ray tail is below *tol_abs*.

    The result is never below ``2 (1 + epsilon)``.

    :raises NoDecay: if ``cos(rho (ray angle + arg z)) >= -DECAY_FLOOR`` on a ray, i.e.
        the integrand does not decay there.
    """
    if z.radius <= 0:
        raise ZeroModulus("truncation needs |z| > 0")
    if not tol_abs > 0:
        raise ValueError(f"tol_abs must be positive, got {tol_abs}")

    r_min = 2.0 * (1.0 + spec.epsilon)
    radius = r_min
    for ray_angle in (-spec.delta1 - math.pi, spec.delta2 - math.pi):
        c = _decay_coefficient(params, ray_angle, z)
        if not c < -DECAY_FLOOR:
            raise NoDecay(
                f"integrand does not decay along the ray at angle {ray_angle:.6g}"
                f" (cos(rho*(angle + arg z)) = {c:.3g}); arg z={z.angle:.6g} is"
                " outside the admissible sector")
        radius = max(radius, _ray_truncation(params, ray_angle, z, tol_abs, r_min))
    return radius


def decay_onset(params: MLParameters, ray_angle: float, z: PolarPoint) -> float:
    """Radius beyond which ``log |Phi|`` is decreasing along the ray.

    The bound uses ``d/dr log|Phi| <= c rho t^rho r^(rho-1) + a/r + 1/(r-1)``
    with ``a = rho (1 - mu_re)``, evaluated on a doubling grid.
    """
    c = _decay_coefficient(params, ray_angle, z)
    if not c < -DECAY_FLOOR:
        raise NoDecay(f"no decay along the ray at angle {ray_angle:.6g}")
    rho = params.rho
    a = rho * (1.0 - params.mu_re)
    t = z.radius

    def slope(r: float) -> float:
        return c * rho * t**rho * r ** (rho - 1.0) + a / r + 1.0 / (r - 1.0)

    r = 2.0
    while slope(r) >= 0 or slope(2.0 * r) >= 0:
        r *= 2.0
    return r


# }}}
