import math

import mpmath
import numpy as np
import pytest

from stirling_gautschi import bounds
from stirling_gautschi.core import DomainError
from stirling_gautschi.reference import (
    MismatchKind,
    lgamma_ref,
    log_factorial_hat,
    log_pi_fn,
    log_pi_hat,
    log_s,
    mismatch_ref,
)

import utils

LOG_SQRT_PI = 0.5 * math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


@pytest.mark.parametrize(
    "z, expected",
    [(1.0, 0.0), (2.0, 0.0), (0.5, LOG_SQRT_PI), (6.0, math.log(120.0))],
)
def test_lgamma_ref_exact_values(z, expected):
    assert lgamma_ref(z) == pytest.approx(expected, abs=1e-14)


def test_lgamma_ref_accuracy():
    for z in np.concatenate([np.linspace(1e-3, 0.5, 50), np.geomspace(0.5, 1e5, 200)]):
        exact = float(mpmath.loggamma(z))
        assert abs(lgamma_ref(z) - exact) <= 1e-13 * max(1.0, abs(exact)), z


@pytest.mark.parametrize("z", [0.0, -1.0, -0.5, math.nan, math.inf])
def test_lgamma_ref_domain(z):
    with pytest.raises(DomainError, match="z > 0"):
        lgamma_ref(z)


def test_log_pi_fn():
    assert log_pi_fn(0.0) == pytest.approx(0.0, abs=1e-14)
    assert log_pi_fn(4.0) == pytest.approx(math.log(24.0), abs=1e-14)
    assert log_pi_fn(0.5) == pytest.approx(-0.1207822376, abs=1e-10)
    with pytest.raises(DomainError):
        log_pi_fn(-0.5)


def test_log_pi_fn_recurrence():
    for x in np.linspace(0, 100, 401):
        diff = log_pi_fn(x + 1) - log_pi_fn(x)
        assert diff == pytest.approx(math.log(x + 1), abs=1e-13 * max(1.0, x))


def test_log_s():
    # three distinct inputs share one value
    for d, x in [(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)]:
        assert log_s(d, x) == pytest.approx(HALF_LOG_2PI - 1.0, abs=1e-15)
    assert log_s(0.0, 1.0) == pytest.approx(-0.0810614668, abs=1e-10)
    with pytest.raises(DomainError, match="x \\+ d > 0"):
        log_s(0.0, 0.0)
    with pytest.raises(DomainError):
        log_s(-1.0, 0.5)


def test_log_pi_hat():
    for x in (0.0, 0.5, 3.0, 17.25):
        assert log_pi_hat((x, 0.0)) == log_pi_fn(x)
        assert log_pi_hat((x, 1.0)) == pytest.approx(log_pi_fn(x + 1), abs=1e-13)
    assert log_pi_hat((0.0, 0.5)) == pytest.approx(0.0, abs=1e-14)
    assert log_pi_hat((1.0, 0.5)) == pytest.approx(0.5 * math.log(2), abs=1e-14)
    with pytest.raises(DomainError):
        log_pi_hat((1.0, 1.5))


def test_log_factorial_hat():
    assert log_factorial_hat(3.0) == pytest.approx(math.log(6.0), abs=1e-14)
    assert log_factorial_hat(2.5) == pytest.approx(0.5 * math.log(12.0), abs=1e-14)
    assert log_factorial_hat(2.5) == pytest.approx(1.2424533, abs=1e-7)
    assert log_factorial_hat(0.5) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DomainError):
        log_factorial_hat(-0.1)


def test_mismatch_kind():
    assert str(MismatchKind.iota()) == "Iota"
    assert str(MismatchKind.m(0.5)) == "M(0.5)"
    assert str(MismatchKind.mhat(-0.5)) == "MHat(-0.5)"
    assert MismatchKind(MismatchKind.IOTA, 3.0).d is None
    assert not MismatchKind.m(1).interpolated
    assert MismatchKind.mhat(1).interpolated
    assert MismatchKind.iota().contains(0.0, 0.0)
    assert not MismatchKind.m(0).contains(0.0)
    assert MismatchKind.mhat(0).contains(0.0, 0.5)
    assert not MismatchKind.mhat(-1).contains(0.25, 0.5)
    assert not MismatchKind.iota().contains(-1.0, 0.5)
    with pytest.raises(DomainError, match="unknown mismatch family"):
        MismatchKind("gamma")
    with pytest.raises(DomainError, match="needs a shift"):
        MismatchKind(MismatchKind.M)


def test_mismatch_ref_exact_values():
    half = MismatchKind.m(0.5)
    assert mismatch_ref(half, 0.0) == pytest.approx(0.5 - LOG_SQRT_PI, abs=1e-14)
    assert mismatch_ref(half, 0.0) == pytest.approx(-0.0723649, abs=1e-7)
    mhat = mismatch_ref(MismatchKind.mhat(0.5), (0.0, 0.5))
    assert mhat == pytest.approx(1.0 - HALF_LOG_2PI, abs=1e-14)
    assert mhat == pytest.approx(0.0810615, abs=1e-7)
    iota = mismatch_ref(MismatchKind.iota(), (0.0, 0.5))
    assert iota == pytest.approx(math.log(2.0) - LOG_SQRT_PI, abs=1e-14)
    assert iota == pytest.approx(0.1207822, abs=1e-7)


def test_mismatch_ref_against_mpmath():
    for x in (0.0, 0.25, 1.0, 3.5, 12.0, 80.0):
        for alpha in (0.0, 0.3, 0.5, 1.0):
            ref = mismatch_ref(MismatchKind.iota(), (x, alpha))
            assert ref == pytest.approx(float(utils.iota(x, alpha)), abs=1e-12)
            for d in (-0.5, 0.0, 0.5, 1.0, 2.0):
                if x + alpha + d > 0:
                    ref = mismatch_ref(MismatchKind.mhat(d), (x, alpha))
                    exact = float(utils.mhat(d, x, alpha))
                    assert ref == pytest.approx(exact, abs=1e-12)
                if x + d > 0:
                    ref = mismatch_ref(MismatchKind.m(d), x)
                    assert ref == pytest.approx(float(utils.m(d, x)), abs=1e-12)


def test_mismatch_ref_composition():
    for x in (0.0, 0.7, 4.0, 25.0):
        for alpha in (0.1, 0.5, 0.9):
            for d in (-0.5, 0.5, 2.0):
                if x + alpha + d <= 0:
                    continue
                composed = mismatch_ref(
                    MismatchKind.iota(), (x, alpha)
                ) + mismatch_ref(MismatchKind.m(d), x + alpha)
                direct = mismatch_ref(MismatchKind.mhat(d), (x, alpha))
                assert composed == pytest.approx(direct, abs=1e-12)


def test_mhat_half_at_midpoint_is_shifted_m_zero():
    for x in (0.0, 0.5, 1.0, 3.0, 10.0):
        mhat = mismatch_ref(MismatchKind.mhat(0.5), (x, 0.5))
        assert mhat == pytest.approx(mismatch_ref(MismatchKind.m(0), x + 1), abs=1e-12)


@pytest.mark.parametrize("d", [-0.5, 0.0, 0.5, 1.0, 2.0])
def test_stirling_mismatch_vanishes(d):
    values = [abs(mismatch_ref(MismatchKind.m(d), x)) for x in (10.0, 1e2, 1e3, 1e4)]
    assert all(b < a for a, b in zip(values, values[1:]))
    # at x = 1000 the mismatch sits inside the two-sided bounds of its family
    lower, upper = bounds.stirling_general_bounds(d, 1e3)
    assert values[2] <= max(abs(lower), abs(upper))


def test_mismatch_ref_domain():
    with pytest.raises(DomainError, match="outside D_d"):
        mismatch_ref(MismatchKind.m(0), 0.0)
    with pytest.raises(DomainError, match="interpolated domain"):
        mismatch_ref(MismatchKind.mhat(-1), (0.25, 0.5))
    with pytest.raises(DomainError):
        mismatch_ref(MismatchKind.iota(), (0.0, 2.0))
