"""Command-line interface: ``mittag-leffler eval|classify|sweep|check|contour``.

Records go to stdout as JSON lines or CSV; diagnostics go to stderr.  Exit
codes: 0 ok, 1 cross-check flagged, 2 invalid parameters, 3 sector or
contour violation, 4 convergence failure.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import re
import sys
from typing import Any, Callable, Iterable

import click
import numpy as np

from mittag_leffler.contour import build_contour, phi_values, truncation_radius
from mittag_leffler.dispatch import cross_check, evaluate
from mittag_leffler.errors import (
    ContourError,
    ConvergenceError,
    InvalidParameter,
    MethodUnavailable,
    SectorViolation,
)
from mittag_leffler.integral import TAIL_SHARE
from mittag_leffler.params import (
    ContourSpec,
    MLParameters,
    PolarPoint,
    classify_singularities,
    default_contour,
    sector_bounds,
    validate_contour,
)
from mittag_leffler.results import EvaluationResult

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_INVALID = 2
EXIT_CONTOUR = 3
EXIT_CONVERGENCE = 4

RECORD_FIELDS = (
    "rho", "mu_re", "mu_im", "z_re", "z_im", "value_re", "value_im",
    "abs_err_est", "method", "reason", "status", "diagnostics",
)
PAIR_FIELDS = ("first", "second", "delta", "bound", "flagged")
SAMPLE_FIELDS = ("zeta_radius", "zeta_angle", "phi_re", "phi_im", "phi_abs")


# {{{ parsing

_POLAR = re.compile(r"^\s*([^@]+)@([^@]+?)\s*$")


def _parse_angle(text: str) -> float:
    t = text.strip().lower()
    if t.endswith("pi"):
        head = t[:-2].strip().rstrip("*")
        factor = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
        return factor * math.pi
    return float(t)


def parse_complex(text: str) -> complex:
    """``"a+bi"``, ``"a+bj"``, ``"a"`` or ``"bi"`` (surrounding spaces allowed)."""
    t = text.strip().replace(" ", "")
    if t.endswith("i"):
        t = t[:-1] + "j"
    value = complex(t)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"non-finite value {text!r}")
    return value


def parse_point(text: str) -> complex | PolarPoint:
    """A complex literal, or ``"r@theta"`` with a declared angle; ``theta``
    may be written as a multiple of pi, e.g. ``2@0.75pi``."""
    m = _POLAR.match(text)
    if m:
        return PolarPoint(float(m.group(1)), _parse_angle(m.group(2)))
    return parse_complex(text)


class _ComplexParam(click.ParamType):
    name = "complex"

    def __init__(self, polar: bool) -> None:
        self.polar = polar

    def convert(self, value, param, ctx):
        if isinstance(value, (complex, PolarPoint)):
            return value
        try:
            return parse_point(value) if self.polar else parse_complex(value)
        except ValueError as exc:
            self.fail(f"cannot parse {value!r}: {exc}", param, ctx)


COMPLEX = _ComplexParam(polar=False)
POINT = _ComplexParam(polar=True)


def parse_grid(spec: str) -> tuple[np.ndarray, np.ndarray]:
    """``"re0:re1:n,im0:im1:m"`` to the two axes (``linspace`` each)."""
    try:
        re_part, im_part = spec.split(",")
        axes = []
        for part in (re_part, im_part):
            lo, hi, count = part.split(":")
            n = int(count)
            if n < 0:
                raise ValueError("negative point count")
            axes.append(np.linspace(float(lo), float(hi), n))
    except ValueError as exc:
        raise click.BadParameter(
            f"expected 're0:re1:n,im0:im1:m', got {spec!r} ({exc})",
            param_hint="--grid") from None
    return axes[0], axes[1]


# }}}


# {{{ output


def _fmt(x: Any) -> str:
    """CSV text for one field; floats with 17 significant digits."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _json_value(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.17g}" if math.isfinite(x) else json.dumps(f"{x}")
    return json.dumps(x)


def _json_line(record: dict[str, Any]) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}"
                           for k, v in record.items()) + "}"


def write_records(records: Iterable[dict[str, Any]], fields: tuple[str, ...],
                  fmt: str) -> None:
    if fmt == "json":
        for rec in records:
            click.echo(_json_line(rec))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        writer.writerow([_fmt(rec.get(f)) for f in fields])
    click.echo(buf.getvalue(), nl=False)


def _flatten(diag: dict[str, float]) -> str:
    return ";".join(f"{k}={v:.17g}" for k, v in diag.items())


def _point_fields(z: complex | PolarPoint) -> dict[str, float]:
    zc = z.to_complex() if isinstance(z, PolarPoint) else z
    return {"z_re": zc.real, "z_im": zc.imag}


def result_record(params: MLParameters, z: complex | PolarPoint,
                  res: EvaluationResult | None, status: str = "ok") -> dict[str, Any]:
    rec: dict[str, Any] = {"rho": params.rho, "mu_re": params.mu_re,
                           "mu_im": params.mu_im, **_point_fields(z)}
    if res is None:
        rec.update(value_re=None, value_im=None, abs_err_est=None, method=None,
                   reason=None, status=status, diagnostics="")
        return rec
    rec.update(
        value_re=res.value.real,
        value_im=res.value.imag,
        abs_err_est=res.abs_err_est,
        method=res.method.value,
        reason=res.choice.reason if res.choice is not None else None,
        status=status,
        diagnostics=_flatten(res.diagnostics),
    )
    return rec


# }}}


# {{{ error handling


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, MethodUnavailable):
        return EXIT_CONTOUR if exc.sector else EXIT_INVALID
    if isinstance(exc, ContourError):
        return EXIT_CONTOUR
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(exc, (InvalidParameter, ValueError, TypeError)):
        return EXIT_INVALID
    return EXIT_CONVERGENCE


def _handles_errors(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as exc:  # noqa: BLE001 -- mapped to documented codes
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(exit_code_for(exc))
    return wrapper


# }}}


# {{{ shared options


def _param_options(fn: Callable) -> Callable:
    fn = click.option("--mu", type=COMPLEX, default="1",
                      help="Complex parameter mu, e.g. 2 or 1+0.5i.")(fn)
    fn = click.option("--alpha", type=float, default=None,
                      help="alpha = 1/rho (E_alpha convention).")(fn)
    fn = click.option("--rho", type=float, default=None,
                      help="rho as in sum z^k / Gamma(mu + k/rho).")(fn)
    return fn


def _contour_options(fn: Callable) -> Callable:
    fn = click.option("--epsilon", type=float, default=None,
                      help="Arc offset, radius 1+epsilon.")(fn)
    fn = click.option("--delta2", type=float, default=None,
                      help="Upper ray offset.")(fn)
    fn = click.option("--delta1", type=float, default=None,
                      help="Lower ray offset.")(fn)
    return fn


_emit_option = click.option("--emit", type=click.Choice(["json", "csv"]),
                            default="json", show_default=True)
_tol_option = click.option("--tol", type=float, default=1e-10, show_default=True)
_method_option = click.option(
    "--method", type=click.Choice(["auto", "series", "integral", "closed"]),
    default="auto", show_default=True)


def make_params(rho: float | None, alpha: float | None, mu: complex) -> MLParameters:
    if (rho is None) == (alpha is None):
        raise click.UsageError("give exactly one of --rho and --alpha")
    if alpha is not None:
        return MLParameters.from_alpha(alpha, mu)
    return MLParameters.from_mu(rho, mu)


def make_spec(params: MLParameters, delta1: float | None, delta2: float | None,
              epsilon: float | None) -> ContourSpec | None:
    """None when no override is given, so callers fall back to defaults
    (and series-only parameters do not trip contour validation)."""
    if delta1 is None and delta2 is None and epsilon is None:
        return None
    base = default_contour(params)
    return validate_contour(
        params,
        base.delta1 if delta1 is None else delta1,
        base.delta2 if delta2 is None else delta2,
        base.epsilon if epsilon is None else epsilon,
    )


# }}}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Evaluate the Mittag-Leffler function E_{rho,mu}(z)."""


@main.command("eval")
@_param_options
@click.option("--z", "z", type=POINT, required=True,
              help='Point as "a+bi" or "r@theta" (declared angle).')
@_method_option
@_tol_option
@_contour_options
@_emit_option
@_handles_errors
def cmd_eval(rho, alpha, mu, z, method, tol, delta1, delta2, epsilon, emit):
    """Evaluate at a single point."""
    params = make_params(rho, alpha, mu)
    spec = make_spec(params, delta1, delta2, epsilon)
    res = evaluate(params, z, method, tol, spec)
    for note in res.notes:
        click.echo(f"note: {note}", err=True)
    write_records([result_record(params, z, res)], RECORD_FIELDS, emit)


@main.command("classify")
@_param_options
@_emit_option
@_handles_errors
def cmd_classify(rho, alpha, mu, emit):
    """Classify the singular points of the integrand at zeta = 0 and 1."""
    params = make_params(rho, alpha, mu)
    report = classify_singularities(params)
    rec = {"rho": params.rho, "mu_re": params.mu_re, "mu_im": params.mu_im,
           **report.as_dict()}
    emit_fields = ("rho", "mu_re", "mu_im", "at_one", "at_zero", "order", "branch")
    write_records([rec], emit_fields, emit)


@main.command("sweep")
@_param_options
@click.option("--grid", required=True, help='"re0:re1:n,im0:im1:m"')
@_method_option
@_tol_option
@_contour_options
@_emit_option
@_handles_errors
def cmd_sweep(rho, alpha, mu, grid, method, tol, delta1, delta2, epsilon, emit):
    """Evaluate over a rectangular grid, real index outermost.

    Per-point failures are reported in the ``status`` column
    (``error:<exit code>:<message>``); the process still exits 0.
    """
    params = make_params(rho, alpha, mu)
    spec = make_spec(params, delta1, delta2, epsilon)
    re_axis, im_axis = parse_grid(grid)
    records = []
    for x in re_axis:
        for y in im_axis:
            z = complex(float(x), float(y))
            try:
                res = evaluate(params, z, method, tol, spec)
            except Exception as exc:  # noqa: BLE001 -- reported per row
                status = f"error:{exit_code_for(exc)}:{type(exc).__name__}: {exc}"
                records.append(result_record(params, z, None, status))
            else:
                records.append(result_record(params, z, res))
    write_records(records, RECORD_FIELDS, emit)


@main.command("check")
@_param_options
@click.option("--z", "z", type=POINT, required=True)
@_tol_option
@_contour_options
@_emit_option
@_handles_errors
def cmd_check(rho, alpha, mu, z, tol, delta1, delta2, epsilon, emit):
    """Evaluate with every applicable method and compare them pairwise.

    Emits one record per method (skipped ones carry ``skipped: reason`` in
    ``status``), then one record per pair.  Exits 1 if any pair differs by
    more than ten times the combined error estimates.
    """
    params = make_params(rho, alpha, mu)
    spec = make_spec(params, delta1, delta2, epsilon)
    report = cross_check(params, z, tol, spec)

    records = [result_record(params, z, r) for r in report.results.values()]
    for m, why in report.skipped.items():
        rec = result_record(params, z, None, f"skipped: {why}")
        rec["method"] = m.value
        records.append(rec)
    pairs = [{"first": p.first.value, "second": p.second.value, "delta": p.delta,
              "bound": p.bound, "flagged": p.flagged} for p in report.pairs]

    write_records(records, RECORD_FIELDS, emit)
    if emit == "csv":
        click.echo("")
    write_records(pairs, PAIR_FIELDS, emit)

    if len(report.results) < 2:
        click.echo("warning: fewer than two methods applicable; nothing compared",
                   err=True)
    for note in report.notes:
        click.echo(f"note: {note}", err=True)
    if report.flagged:
        click.echo("cross-check FLAGGED", err=True)
        sys.exit(EXIT_FLAGGED)


@main.command("contour")
@_param_options
@click.option("--z", "z", type=POINT, required=True)
@click.option("--samples", type=click.IntRange(min=0), default=100, show_default=True)
@_tol_option
@_contour_options
@_emit_option
@_handles_errors
def cmd_contour(rho, alpha, mu, z, samples, tol, delta1, delta2, epsilon, emit):
    """Sample the integrand along the truncated contour.

    The first record is a header with the truncation radius and the sector
    bounds; then ``--samples`` points equally spaced in arclength.
    """
    params = make_params(rho, alpha, mu)
    spec = make_spec(params, delta1, delta2, epsilon) or default_contour(params)
    zp = z if isinstance(z, PolarPoint) else PolarPoint.from_complex(z).lifted()
    if zp.radius == 0:
        raise InvalidParameter("the contour integrand needs z != 0")

    r_trunc = truncation_radius(params, zp, spec, TAIL_SHARE * tol)
    sector = sector_bounds(params, spec)
    if zp.angle not in sector:
        raise SectorViolation(f"arg z = {zp.angle:.17g} is outside the sector "
                              f"({sector.lower:.17g}, {sector.upper:.17g})")
    path = build_contour(params, spec, r_trunc)
    points = path.sample(samples)

    header = {"record": "header", "rho": params.rho, "mu_re": params.mu_re,
              "mu_im": params.mu_im, "z_radius": zp.radius, "z_angle": zp.angle,
              "delta1": spec.delta1, "delta2": spec.delta2, "epsilon": spec.epsilon,
              "r_trunc": r_trunc, "sector_lower": sector.lower,
              "sector_upper": sector.upper, "samples": samples}
    rows = []
    if points:
        r = np.array([p.radius for p in points])
        th = np.array([p.angle for p in points])
        phi = phi_values(params, r, th, zp)
        for ri, ti, v in zip(r, th, phi):
            rows.append({"zeta_radius": float(ri), "zeta_angle": float(ti),
                         "phi_re": float(v.real), "phi_im": float(v.imag),
                         "phi_abs": float(abs(v))})

    if emit == "json":
        write_records([header], tuple(header), emit)
        write_records(rows, SAMPLE_FIELDS, emit)
    else:
        # header as comment lines so the sample table stays plain CSV
        for k, v in header.items():
            click.echo(f"# {k}={_fmt(v)}")
        write_records(rows, SAMPLE_FIELDS, emit)


if __name__ == "__main__":  # pragma: no cover
    main()
