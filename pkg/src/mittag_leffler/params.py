"""Parameters, contour tunables, the admissible sector and the classification
of the integrand's singular points."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from mittag_leffler.errors import (
    DeltaOutOfRange,
    EmptySector,
    EpsilonNonPositive,
    NonFinite,
    RhoOutOfRange,
    ZeroModulus,
)

#: Values within this distance of an integer are treated as that integer.
TAU_INT = 1.0e-12


def snap_int(x: float, tol: float = TAU_INT) -> int | None:
    """Return the integer nearest to *x* if it is within *tol*, else None."""
    n = round(x)
    if abs(x - n) <= tol:
        return int(n)
    return None


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise NonFinite(f"{name} must be finite, got {v!r}")


def as_complex(z: complex | float, name: str = "z") -> complex:
    """Convert to :class:`complex`, rejecting NaN and infinities."""
    z = complex(z)
    _require_finite(name, z.real, z.imag)
    return z


# {{{ types


@dataclass(frozen=True)
class MLParameters:
    """The pair :math:`(\\rho, \\mu)` with :math:`\\mu = \\mu_R + i\\mu_I`."""

    rho: float
    mu_re: float
    mu_im: float = 0.0

    def __post_init__(self) -> None:
        for name in ("rho", "mu_re", "mu_im"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite("rho", self.rho)
        _require_finite("mu", self.mu_re, self.mu_im)
        if not self.rho > 0:
            raise RhoOutOfRange(f"rho must be positive, got {self.rho}")

    @classmethod
    def from_mu(cls, rho: float, mu: complex | float) -> MLParameters:
        mu = complex(mu)
        return cls(float(rho), mu.real, mu.imag)

    @classmethod
    def from_alpha(cls, alpha: float, mu: complex | float) -> MLParameters:
        """Build from the :math:`E_{\\alpha,\\mu}` convention,
        :math:`\\rho = 1/\\alpha`."""
        if not alpha > 0:
            raise RhoOutOfRange(f"alpha must be positive, got {alpha}")
        return cls.from_mu(1.0 / alpha, mu)

    @property
    def mu(self) -> complex:
        return complex(self.mu_re, self.mu_im)

    @property
    def alpha(self) -> float:
        return 1.0 / self.rho


@dataclass(frozen=True)
class PolarPoint:
    """A complex number stored as ``(radius, angle)``.

    The angle is never reduced modulo :math:`2\\pi`, so powers
    ``radius**p * exp(1j * p * angle)`` follow the declared sheet.
    """

    radius: float
    angle: float

    def __post_init__(self) -> None:
        _require_finite("polar point", self.radius, self.angle)
        if self.radius < 0:
            raise ValueError(f"radius must be non-negative, got {self.radius}")

    @classmethod
    def from_complex(cls, z: complex | float) -> PolarPoint:
        """Principal-branch representation, angle in :math:`(-\\pi, \\pi]`."""
        z = as_complex(z)
        return cls(abs(z), cmath.phase(z))

    def to_complex(self) -> complex:
        return cmath.rect(self.radius, self.angle)

    def power(self, p: float) -> PolarPoint:
        return PolarPoint(self.radius**p, p * self.angle)

    def __mul__(self, other: PolarPoint) -> PolarPoint:
        return PolarPoint(self.radius * other.radius, self.angle + other.angle)

    def scaled(self, factor: float) -> PolarPoint:
        return PolarPoint(self.radius * factor, self.angle)

    def lifted(self) -> PolarPoint:
        """Shift a negative angle by :math:`2\\pi` (principal arg into ``[0, 2pi)``)."""
        if self.angle < 0:
            return PolarPoint(self.radius, self.angle + 2.0 * math.pi)
        return self


@dataclass(frozen=True)
class ContourSpec:
    """Ray angles and arc offset of the integration contour.

    Build through :func:`validate_contour`, which checks the bounds against a
    particular :class:`MLParameters`.
    """

    delta1: float
    delta2: float
    epsilon: float


@dataclass(frozen=True)
class SectorCondition:
    """Open interval ``(lower, upper)`` of admissible ``arg z``."""

    lower: float
    upper: float

    def __contains__(self, angle: float) -> bool:
        return self.lower < angle < self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


class ZeroKind(enum.Enum):
    REGULAR = "regular"
    POLE = "pole"
    BRANCH_POINT = "branch_point"


@dataclass(frozen=True)
class SingularityReport:
    """Nature of the singular points :math:`\\zeta = 1` and :math:`\\zeta = 0`.

    ``order`` is the pole order when ``at_zero`` is :attr:`ZeroKind.POLE`, and
    the non-negative integer exponent :math:`\\rho(1-\\mu_R)` when it is
    :attr:`ZeroKind.REGULAR`.
    """

    at_zero: ZeroKind
    order: int | None
    branch: str
    at_one: str = "simple_pole"

    def as_dict(self) -> dict[str, object]:
        return {
            "at_one": self.at_one,
            "at_zero": self.at_zero.value,
            "order": self.order,
            "branch": self.branch,
        }


# }}}


# {{{ operations


def _check_rho_for_integral(params: MLParameters) -> None:
    if not params.rho > 0.5:
        raise RhoOutOfRange(
            f"the integral representation requires rho > 1/2, got rho={params.rho}")


def max_delta(rho: float) -> float:
    return min(math.pi, math.pi / rho)


def validate_contour(params: MLParameters, delta1: float, delta2: float,
                     epsilon: float) -> ContourSpec:
    """Check the contour tunables against
    ``pi/(2 rho) < delta <= min(pi, pi/rho)`` and ``epsilon > 0``."""
    _check_rho_for_integral(params)
    _require_finite("contour parameters", delta1, delta2, epsilon)

    lo = math.pi / (2.0 * params.rho)
    hi = max_delta(params.rho)
    for name, d in (("delta1", delta1), ("delta2", delta2)):
        if not lo < d <= hi:
            raise DeltaOutOfRange(
                f"{name}={d} outside ({lo}, {hi}] for rho={params.rho}")
    if not epsilon > 0:
        raise EpsilonNonPositive(f"epsilon must be positive, got {epsilon}")

    return ContourSpec(float(delta1), float(delta2), float(epsilon))


def default_contour(params: MLParameters, epsilon: float = 0.5) -> ContourSpec:
    """Widest admissible rays; exactly ``pi`` at ``rho = 1`` so the contour
    closes into a circle for integer ``mu``."""
    if snap_int(params.rho) == 1:
        delta = math.pi
    else:
        delta = max_delta(params.rho) * (1.0 - 1.0e-9)
    return validate_contour(params, delta, delta, epsilon)


def sector_bounds(params: MLParameters, spec: ContourSpec) -> SectorCondition:
    half = math.pi / (2.0 * params.rho)
    lower = half - spec.delta2 + math.pi
    upper = -half + spec.delta1 + math.pi
    if not lower < upper:
        raise EmptySector(f"empty sector ({lower}, {upper})")
    return SectorCondition(lower, upper)


def z_in_sector(z: PolarPoint, sector: SectorCondition) -> bool:
    """Strict test on the declared angle of *z*."""
    if z.radius == 0:
        raise ZeroModulus("arg z is undefined for z = 0")
    return z.angle in sector


def classify_singularities(params: MLParameters) -> SingularityReport:
    """Classify :math:`\\zeta = 0` for the integrand; :math:`\\zeta = 1` is
    always a simple pole."""
    _check_rho_for_integral(params)

    n = snap_int(params.rho)
    if n is None:
        return SingularityReport(
            ZeroKind.BRANCH_POINT, None, f"rho={params.rho} is not an integer")
    if abs(params.mu_im) > TAU_INT:
        return SingularityReport(
            ZeroKind.BRANCH_POINT, None, f"mu_im={params.mu_im} is nonzero")

    m = snap_int(n * (1.0 - params.mu_re))
    if m is None:
        return SingularityReport(
            ZeroKind.BRANCH_POINT, None,
            f"rho*(1-mu_re)={n * (1.0 - params.mu_re)} is not an integer")
    if m >= 0:
        return SingularityReport(
            ZeroKind.REGULAR, m, f"rho={n}, mu_im=0, rho*(1-mu_re)=m1={m}")
    return SingularityReport(
        ZeroKind.POLE, -m, f"rho={n}, mu_im=0, rho*(1-mu_re)=-m2, m2={-m}")


# }}}
