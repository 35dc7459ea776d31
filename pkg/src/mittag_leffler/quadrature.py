"""Adaptive Gauss-Kronrod quadrature for complex-valued integrands, and the
contour integral built on top of it."""

from __future__ import annotations

import dataclasses
import heapq
import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from mittag_leffler.contour import ContourPath, phi_values, ray_tail_bound
from mittag_leffler.errors import DepthExceeded, NonFinite
from mittag_leffler.params import MLParameters, PolarPoint

DEFAULT_MAX_DEPTH = 40
MAX_PANELS = 20000

_EPS = sys.float_info.epsilon
_UFLOW = sys.float_info.min

# 21-point Kronrod extension of the 10-point Gauss rule, as tabulated in
# QUADPACK (qk21).  Odd indices of the node list are the Gauss nodes.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# full symmetric node/weight arrays, ordered -1 .. 1
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]


@dataclass(frozen=True)
class QuadratureOutcome:
    value: complex
    abs_err_est: float
    panels: int
    #: integral of ``|f|``; the scale against which rounding is measured
    abs_integral: float = 0.0
    #: True when rounding, not the rule, limits the accuracy
    roundoff_limited: bool = False
    #: bound on the discarded ray tails (contour integrals only)
    tail_bound: float = 0.0


@dataclass(frozen=True)
class _Panel:
    a: float
    b: float
    depth: int
    value: complex
    err: float
    abs_value: float
    settled: bool


def _gk21(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
          depth: int) -> _Panel:
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(center + half * NODES), dtype=complex)
    if not np.all(np.isfinite(fx)):
        raise NonFinite(f"integrand is not finite on [{a}, {b}]")

    resk = np.dot(KRONROD_WEIGHTS, fx)
    resg = np.dot(GAUSS_WEIGHTS, fx)
    absf = np.abs(fx)
    resabs = float(np.dot(KRONROD_WEIGHTS, absf)) * abs(half)
    resasc = float(np.dot(KRONROD_WEIGHTS, np.abs(fx - 0.5 * resk))) * abs(half)
    err = abs(resk - resg) * abs(half)

    # QUADPACK error scaling
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    floor = 50.0 * _EPS * resabs
    settled = False
    if resabs > _UFLOW / (50.0 * _EPS) and err <= floor:
        err = floor
        settled = True

    return _Panel(a, b, depth, complex(resk * half), float(err), resabs, settled)


def integrate_segment(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                      tol_abs: float,
                      max_depth: int = DEFAULT_MAX_DEPTH) -> QuadratureOutcome:
    """Integrate a complex function over ``[a, b]`` by adaptive bisection.

    *f* is called with an array of abscissae and must return an array of the
    same shape; ``a > b`` integrates over ``[b, a]`` and negates.  Each panel
    uses the 21-point Gauss-Kronrod rule, and the difference to the embedded
    10-point Gauss rule drives the local error estimate.  The panel with the largest
    estimate is bisected until the sum of estimates is at most *tol_abs*.

    Panels whose estimate is already at the rounding floor
    ``50 eps int|f|`` are not refined further; when only such panels remain
    the result is returned with ``roundoff_limited=True`` and an estimate
    that may exceed *tol_abs*.

    :raises DepthExceeded: if a panel needing refinement is at *max_depth*
        (the partial result is attached to the exception).
    :raises NonFinite: if *f* returns NaN or infinity.
    """
    if not tol_abs > 0:
        raise ValueError(f"tol_abs must be positive, got {tol_abs}")
    if a == b or not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"need a finite, non-degenerate interval, got [{a}, {b}]")
    if a > b:
        out = integrate_segment(f, b, a, tol_abs, max_depth)
        return dataclasses.replace(out, value=-out.value)

    first = _gk21(f, a, b, 0)
    done: list[_Panel] = []
    heap: list[tuple[float, int, _Panel]] = []
    counter = 0

    def push(p: _Panel) -> None:
        nonlocal counter
        if p.settled:
            done.append(p)
        else:
            heapq.heappush(heap, (-p.err, counter, p))
            counter += 1

    push(first)
    total_err = first.err

    def summary() -> tuple[complex, float, float, int]:
        panels = done + [item[2] for item in heap]
        value = math.fsum(p.value.real for p in panels) + 1j * math.fsum(
            p.value.imag for p in panels)
        err = math.fsum(p.err for p in panels)
        absval = math.fsum(p.abs_value for p in panels)
        return value, err, absval, len(panels)

    while heap and total_err > tol_abs:
        _, _, worst = heapq.heappop(heap)
        if worst.depth >= max_depth or len(done) + len(heap) + 2 > MAX_PANELS:
            push(worst)
            value, err, _, n = summary()
            raise DepthExceeded(
                f"adaptive quadrature reached depth {worst.depth} on "
                f"[{worst.a}, {worst.b}] with error estimate {err:.3g} > "
                f"{tol_abs:.3g}", value, err, n)

        mid = 0.5 * (worst.a + worst.b)
        left = _gk21(f, worst.a, mid, worst.depth + 1)
        right = _gk21(f, mid, worst.b, worst.depth + 1)
        push(left)
        push(right)
        total_err += left.err + right.err - worst.err

    value, err, absval, n = summary()
    return QuadratureOutcome(
        value=value,
        abs_err_est=err,
        panels=n,
        abs_integral=absval,
        roundoff_limited=err > tol_abs,
    )


def integrate_path(params: MLParameters, z: PolarPoint, path: ContourPath,
                   tol_abs: float) -> QuadratureOutcome:
    """Integrate the integrand along *path*.

    Rays are parameterized by radius with ``dzeta = e^{i angle} dr`` (the
    inward ray ``s1`` contributes with a minus sign), the arc by angle with
    ``dzeta = i R e^{i theta} dtheta``.  Each piece receives ``tol_abs / 4``;
    the remaining quarter is reserved for the discarded ray tails, whose
    bound is added to the error estimate.  Pieces are summed in the order
    ``s1``, arc, ``s2``.
    """
    part_tol = tol_abs / 4.0
    s1, arc, s2 = path.pieces
    inner = arc.radius

    def ray_integrand(angle: float):
        unit = complex(math.cos(angle), math.sin(angle))
        return lambda r: phi_values(params, r, np.full_like(r, angle), z) * unit

    def arc_integrand(theta):
        r = np.full_like(theta, inner)
        return phi_values(params, r, theta, z) * (1j * inner * np.exp(1j * theta))

    out1 = integrate_segment(ray_integrand(s1.angle), inner, path.r_trunc, part_tol)
    out_arc = integrate_segment(arc_integrand, arc.angle_from, arc.angle_to, part_tol)
    out2 = integrate_segment(ray_integrand(s2.angle), inner, path.r_trunc, part_tol)

    tails = (ray_tail_bound(params, s1.angle, z, path.r_trunc)
             + ray_tail_bound(params, s2.angle, z, path.r_trunc))
    parts = (out1, out_arc, out2)
    value = -out1.value + out_arc.value + out2.value
    return QuadratureOutcome(
        value=value,
        abs_err_est=sum(p.abs_err_est for p in parts) + tails,
        panels=sum(p.panels for p in parts),
        abs_integral=sum(p.abs_integral for p in parts),
        roundoff_limited=any(p.roundoff_limited for p in parts),
        tail_bound=tails,
    )
