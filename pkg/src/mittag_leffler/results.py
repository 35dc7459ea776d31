"""Result and method-tag types shared by every backend."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Method(enum.Enum):
    SERIES = "series"
    INTEGRAL = "integral"
    CLOSED_FORM = "closed_form"


class Requested(enum.Enum):
    """What the caller asked for; ``AUTO`` lets the dispatcher decide."""

    AUTO = "auto"
    SERIES = "series"
    INTEGRAL = "integral"
    CLOSED_FORM = "closed_form"

    @classmethod
    def parse(cls, text: str | Requested) -> Requested:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        if key == "closed":
            key = "closed_form"
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValueError(
                f"unknown method {text!r}; expected one of {names}") from None


@dataclass(frozen=True)
class MethodChoice:
    requested: Requested
    chosen: Method
    reason: str


@dataclass(frozen=True)
class EvaluationResult:
    """A function value with an absolute error estimate.

    ``diagnostics`` holds named reals; the keys depend on ``method``:

    * series: ``terms_used``, ``condition_estimate``
    * integral: ``panels``, ``truncation_radius``, ``tail_bound``,
      ``integrand_scale``, ``roundoff_limited``
    * closed form: ``in_closed_form_sector``

    ``notes`` carries human-readable warnings; ``choice`` is filled in by
    :func:`mittag_leffler.dispatch.evaluate`.
    """

    value: complex
    abs_err_est: float
    method: Method
    diagnostics: dict[str, float] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    choice: MethodChoice | None = None

    def __post_init__(self) -> None:
        if not self.abs_err_est >= 0:
            raise ValueError(f"negative error estimate {self.abs_err_est}")
