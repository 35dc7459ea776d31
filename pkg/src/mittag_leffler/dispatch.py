"""Method selection, the public :func:`evaluate` entry point and
:func:`cross_check`."""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from dataclasses import dataclass, field

from mittag_leffler.errors import (
    ContourError,
    ConvergenceError,
    InvalidParameter,
    InvalidTol,
    MethodUnavailable,
)
from mittag_leffler.integral import eval_closed_form_rho1, eval_integral
from mittag_leffler.params import (
    TAU_INT,
    ContourSpec,
    MLParameters,
    PolarPoint,
    as_complex,
    default_contour,
    sector_bounds,
    snap_int,
)
from mittag_leffler.results import EvaluationResult, Method, MethodChoice, Requested
from mittag_leffler.series import eval_series

logger = logging.getLogger(__name__)

#: Below this ``|z|`` the automatic policy always sums the series.  For
#: ``0.6 <= rho <= 1`` the series condition estimate stays under ``1e4`` up
#: to ``|z| = 4``; 3.0 leaves a margin and hands ``|z| = 4`` to the integral.
Z_SWITCH = 3.0

#: Factor applied to the combined error estimates in :func:`cross_check`.
CHECK_FACTOR = 10.0

DEFAULT_TOL = 1.0e-10

ZLike = complex | float | PolarPoint


def _split_z(z: ZLike) -> tuple[complex, PolarPoint]:
    """Complex value plus the polar form used for sector tests.

    A :class:`PolarPoint` keeps its declared angle; anything else gets the
    principal angle lifted into ``[0, 2 pi)``.
    """
    if isinstance(z, PolarPoint):
        return z.to_complex(), z
    zc = as_complex(z)
    return zc, PolarPoint.from_complex(zc).lifted()


def _closed_form_order(params: MLParameters, *, exact: bool) -> int | None:
    """``n`` when ``rho = 1`` and ``mu = n`` is a real integer, else None."""
    if exact:
        if params.rho == 1.0 and params.mu_im == 0.0 and params.mu_re.is_integer():
            return int(params.mu_re)
        return None
    if snap_int(params.rho) != 1 or abs(params.rho - 1.0) > TAU_INT:
        return None
    if abs(params.mu_im) > TAU_INT:
        return None
    return snap_int(params.mu_re)


def _integral_spec(params: MLParameters, spec: ContourSpec | None) -> ContourSpec:
    return spec if spec is not None else default_contour(params)


def _integral_blocker(params: MLParameters, zc: complex, zp: PolarPoint,
                      spec: ContourSpec | None) -> str | None:
    """Why the integral cannot be used, or None when it can."""
    if not params.rho > 0.5:
        return f"the integral representation requires rho > 1/2 (rho={params.rho})"
    if zc == 0:
        return "the integral representation needs z != 0"
    sector = sector_bounds(params, _integral_spec(params, spec))
    if zp.angle not in sector:
        return (f"arg z = {zp.angle:.6g} is outside the sector "
                f"({sector.lower:.6g}, {sector.upper:.6g})")
    return None


def _with_choice(res: EvaluationResult, requested: Requested, reason: str,
                 extra_notes: tuple[str, ...] = ()) -> EvaluationResult:
    choice = MethodChoice(requested, res.method, reason)
    return dataclasses.replace(res, choice=choice, notes=res.notes + extra_notes)


def evaluate(params: MLParameters, z: ZLike, method: str | Requested = Requested.AUTO,
             tol: float = DEFAULT_TOL, spec: ContourSpec | None = None,
             z_switch: float = Z_SWITCH) -> EvaluationResult:
    """Evaluate :math:`E_{\\rho,\\mu}(z)` with an automatically chosen or an
    explicitly requested method.

    The automatic policy, in order:

    0. ``z = 0``: series (the value is ``1/Gamma(mu)``);
    1. closed form when ``rho`` snaps to 1 and ``mu`` to a real integer;
    2. series when ``|z| <= z_switch`` or ``rho <= 1/2``;
    3. integral when the lifted ``arg z`` lies in the sector of *spec*
       (default rays when omitted).  If rounding on the contour leaves the
       integral's estimate above *tol*, the series is also summed and the
       result with the smaller estimate is returned;
    4. otherwise series, with a note that the result may suffer from
       cancellation.

    An explicit request bypasses the snapping in step 1: the closed form
    then needs ``rho == 1`` and an exactly integral real ``mu``.

    :raises MethodUnavailable: when an explicitly requested method does not
        apply; ``sector`` is set on the exception for integral requests.
    """
    if not tol > 0:
        raise InvalidTol(f"tol must be positive, got {tol}")
    requested = Requested.parse(method)
    zc, zp = _split_z(z)

    if requested is Requested.SERIES:
        return _with_choice(eval_series(params, zc, tol), requested, "requested")

    if requested is Requested.CLOSED_FORM:
        n = _closed_form_order(params, exact=True)
        if n is None:
            raise MethodUnavailable(
                f"closed form needs rho = 1 and a real integer mu, got "
                f"rho={params.rho}, mu={params.mu}")
        if zc == 0 and n != 1:
            raise MethodUnavailable(f"closed form for mu={n} needs z != 0")
        return _with_choice(eval_closed_form_rho1(n, zc), requested, "requested")

    if requested is Requested.INTEGRAL:
        blocker = _integral_blocker(params, zc, zp, spec)
        if blocker is not None:
            raise MethodUnavailable(blocker, sector=True)
        res = eval_integral(params, zp, _integral_spec(params, spec), tol)
        return _with_choice(res, requested, "requested")

    return _auto(params, zc, zp, tol, spec, z_switch)


def _auto(params: MLParameters, zc: complex, zp: PolarPoint, tol: float,
          spec: ContourSpec | None, z_switch: float) -> EvaluationResult:
    auto = Requested.AUTO
    if zc == 0:
        return _with_choice(eval_series(params, zc, tol), auto, "z = 0")

    n = _closed_form_order(params, exact=False)
    if n is not None:
        return _with_choice(eval_closed_form_rho1(n, zc), auto,
                            f"rho = 1 and integer mu = {n}")

    if not params.rho > 0.5:
        return _with_choice(eval_series(params, zc, tol), auto,
                            "rho <= 1/2: integral unavailable")
    if abs(zc) <= z_switch:
        return _with_choice(eval_series(params, zc, tol), auto,
                            f"|z| <= z_switch = {z_switch:g}")

    blocker = _integral_blocker(params, zc, zp, spec)
    if blocker is None:
        return _integral_with_fallback(params, zc, zp, tol, spec)

    res = eval_series(params, zc, tol)
    note = (f"no integral representation for this z ({blocker}); "
            f"large-|z| series may lose accuracy to cancellation")
    logger.warning(note)
    return _with_choice(res, auto, "outside the integral sector", (note,))


def _integral_with_fallback(params: MLParameters, zc: complex, zp: PolarPoint,
                            tol: float, spec: ContourSpec | None) -> EvaluationResult:
    auto = Requested.AUTO
    reason = "|z| > z_switch and arg z in sector"
    try:
        res = eval_integral(params, zp, _integral_spec(params, spec), tol)
    except ConvergenceError as exc:
        res, failure = None, f"integral failed ({exc})"
    else:
        if res.abs_err_est <= tol:
            return _with_choice(res, auto, reason)
        failure = f"integral estimate {res.abs_err_est:.3g} exceeds tol"

    try:
        alt = eval_series(params, zc, tol)
    except ConvergenceError:
        if res is None:
            raise
        return _with_choice(res, auto, reason)
    if res is None or alt.abs_err_est < res.abs_err_est:
        return _with_choice(alt, auto, f"series fallback: {failure}")
    return _with_choice(res, auto, reason)


# {{{ cross check


@dataclass(frozen=True)
class PairDelta:
    first: Method
    second: Method
    delta: float
    #: ``CHECK_FACTOR`` times the sum of both error estimates
    bound: float

    @property
    def flagged(self) -> bool:
        return not self.delta <= self.bound


@dataclass(frozen=True)
class CrossCheckReport:
    results: dict[Method, EvaluationResult]
    skipped: dict[Method, str]
    pairs: list[PairDelta] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return any(p.flagged for p in self.pairs)

    @property
    def notes(self) -> list[str]:
        out = [f"{m.value} skipped: {why}" for m, why in self.skipped.items()]
        if len(self.results) < 2:
            out.append("fewer than two methods applicable; nothing to compare")
        return out


def cross_check(params: MLParameters, z: ZLike, tol: float = DEFAULT_TOL,
                spec: ContourSpec | None = None) -> CrossCheckReport:
    """Evaluate with every applicable method and compare all pairs.

    A pair is flagged when ``|a - b|`` exceeds ``CHECK_FACTOR`` times the sum
    of the two error estimates.  Inapplicable or failing methods are listed
    in ``skipped`` with the reason; this function itself does not raise for
    them.
    """
    if not tol > 0:
        raise InvalidTol(f"tol must be positive, got {tol}")
    zc, zp = _split_z(z)
    results: dict[Method, EvaluationResult] = {}
    skipped: dict[Method, str] = {}

    def attempt(method: Method, fn) -> None:
        try:
            results[method] = fn()
        except (InvalidParameter, ContourError, ConvergenceError) as exc:
            skipped[method] = f"{type(exc).__name__}: {exc}"

    attempt(Method.SERIES, lambda: eval_series(params, zc, tol))

    blocker = _integral_blocker(params, zc, zp, spec)
    if blocker is None:
        attempt(Method.INTEGRAL,
                lambda: eval_integral(params, zp, _integral_spec(params, spec), tol))
    else:
        skipped[Method.INTEGRAL] = blocker

    n = _closed_form_order(params, exact=False)
    if n is None:
        skipped[Method.CLOSED_FORM] = "needs rho = 1 and a real integer mu"
    else:
        attempt(Method.CLOSED_FORM, lambda: eval_closed_form_rho1(n, zc))

    pairs = []
    for a, b in itertools.combinations(list(results), 2):
        ra, rb = results[a], results[b]
        bound = CHECK_FACTOR * (ra.abs_err_est + rb.abs_err_est)
        delta = abs(ra.value - rb.value)
        if not math.isfinite(delta):
            delta = math.inf
        pairs.append(PairDelta(a, b, delta, bound))
    return CrossCheckReport(results, skipped, pairs)


# }}}
