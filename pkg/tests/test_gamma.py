from __future__ import annotations

import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mittag_leffler.errors import GammaOverflow, NonFinite
from mittag_leffler.gamma import MAX_ABS_ARG, REL_ACCURACY, recip_gamma

mpmath.mp.dps = 40


def oracle(w: complex) -> complex:
    return complex(mpmath.rgamma(mpmath.mpc(w.real, w.imag)))


def rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def annulus(rng: random.Random, lo: float, hi: float, n: int) -> list[complex]:
    """Points with |w| in [lo, hi], kept off the non-positive integers."""
    out = []
    while len(out) < n:
        w = cmath.rect(rng.uniform(lo, hi), rng.uniform(-math.pi, math.pi))
        if w.real < 0.5 and abs(w.imag) < 1e-3 and abs(w.real - round(w.real)) < 1e-3:
            continue
        out.append(w)
    return out


def test_simple_values():
    assert recip_gamma(1) == 1
    assert recip_gamma(5) == 1 / 24
    assert recip_gamma(0.5) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


def test_oracle_3_4i():
    w = 3 + 4j
    assert rel(recip_gamma(w), oracle(w)) <= 1e-14


@pytest.mark.parametrize("n", range(0, 21))
def test_zeros_are_exact(n):
    value = recip_gamma(-n)
    assert value == 0j
    assert recip_gamma(complex(-n + 1e-13, 0)) == 0j


def test_near_zero_is_not_snapped():
    w = -3 + 1e-9
    assert recip_gamma(w) != 0
    assert rel(recip_gamma(w), oracle(w)) <= REL_ACCURACY


@pytest.mark.parametrize("lo,hi", [(0.05, 1), (1, 10), (10, 50), (50, 120), (120, 170)])
def test_against_oracle(lo, hi):
    rng = random.Random(int(lo * 1000 + hi))
    worst = 0.0
    for w in annulus(rng, lo, hi, 150):
        ref = mpmath.rgamma(mpmath.mpc(w.real, w.imag))
        if abs(ref) > 1e300 or abs(ref) < 1e-300:
            # not representable in double; the kernel must report, not saturate
            if abs(ref) > 1e308:
                with pytest.raises(GammaOverflow):
                    recip_gamma(w)
            continue
        worst = max(worst, rel(recip_gamma(w), complex(ref)))
    assert worst <= REL_ACCURACY


def test_recurrence_and_reflection():
    rng = random.Random(7)
    for w in annulus(rng, 0.1, 50, 400):
        r0 = recip_gamma(w)
        if r0 == 0:
            continue
        # 1/Gamma(w+1) = (1/Gamma(w)) / w
        assert rel(recip_gamma(w + 1) * w, r0) <= 1e-12
        # 1/Gamma(w) * 1/Gamma(1-w) = sin(pi w)/pi
        ref = complex(mpmath.sinpi(mpmath.mpc(w.real, w.imag)) / mpmath.pi)
        if abs(ref) < 1e-300 or abs(ref) > 1e300:
            continue
        assert rel(r0 * recip_gamma(1 - w), ref) <= 1e-12


@given(st.floats(-40, 40), st.floats(-40, 40))
def test_conjugate_symmetry(x, y):
    w = complex(x, y)
    assert recip_gamma(w.conjugate()) == recip_gamma(w).conjugate()


def test_real_axis_stays_real():
    for x in (0.3, 2.7, -1.5, -7.25, 33.3):
        assert recip_gamma(x).imag == 0.0


def test_overflow_reported():
    # 1/Gamma(-200.5) is ~ 1e375, beyond double range
    with pytest.raises(GammaOverflow):
        recip_gamma(-200.5)
    assert MAX_ABS_ARG == 170.0


def test_non_finite_rejected():
    with pytest.raises(NonFinite):
        recip_gamma(complex(math.nan, 0))
