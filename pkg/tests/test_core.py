import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from stirling_gautschi import core
from stirling_gautschi.core import (
    CompensatedSum,
    DomainError,
    Enclosure,
    InterpPoint,
    StirlingShift,
    Term,
)

import utils

LN2 = math.log(2.0)


@pytest.mark.parametrize(
    "alpha, t, expected",
    [
        (0.5, 1.25, 0.5),
        (0.5, 1.75, -0.5),
        # ties resolve to the "<= alpha" branch
        (0.5, 3.5, 0.5),
        (0.0, 2.0, 1.0),
        (0.0, 2.3, 0.0),
        (1.0, 0.99, 0.0),
        (0.25, -0.9, 0.75),
    ],
)
def test_phi(alpha, t, expected):
    assert core.phi(alpha, t) == expected


def test_phi_is_periodic():
    for t in np.linspace(-3, 3, 97):
        assert core.phi(0.3, t) == core.phi(0.3, t + 5.0)


@pytest.mark.parametrize("alpha", [-0.1, 1.5, math.nan])
def test_phi_domain(alpha):
    with pytest.raises(DomainError, match="alpha"):
        core.phi(alpha, 0.5)


@pytest.mark.parametrize(
    "t, expected", [(3.0, 0.5), (0.5, 0.0), (2.75, -0.25), (-0.25, -0.25)]
)
def test_sawtooth(t, expected):
    assert core.sawtooth(t) == expected


def test_frac_negative():
    assert core.frac(-0.25) == 0.75
    assert core.frac(-2.0) == 0.0


def test_iota_segment_closed_form():
    expected = 0.5 * math.log(1.5) + 0.5 * math.log(0.75)
    assert core.iota_segment(0.0, 0.5, 1) == pytest.approx(expected, abs=1e-16)
    assert core.iota_segment(0.0, 0.5, 1) == pytest.approx(0.0588915, abs=1e-7)


def test_iota_segment_matches_quadrature():
    for x, alpha, k in [(0.0, 0.5, 1), (2.5, 0.3, 3), (10.0, 0.9, 1)]:
        # phi is 1 - alpha on (k, k + alpha) and -alpha on (k + alpha, k + 1)
        rising = mpmath.quad(lambda t: (1 - alpha) / (x + t), [k, k + alpha])
        falling = mpmath.quad(lambda t: alpha / (x + t), [k + alpha, k + 1])
        exact = rising - falling
        assert core.iota_segment(x, alpha, k) == pytest.approx(float(exact), abs=1e-14)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_iota_segment_vanishes_at_endpoints(alpha):
    for x in (0.0, 0.5, 7.0):
        for k in (1, 2, 50):
            assert core.iota_segment(x, alpha, k) == 0.0


def test_iota_segment_bracket():
    for x in np.linspace(0, 10, 21):
        for alpha in np.linspace(0, 1, 17):
            for k in (1, 2, 5, 40):
                a = alpha * (1 - alpha)
                term = core.iota_segment_term(x, alpha, k)
                y = x + k
                assert term.value >= 0
                assert term.value + term.slack >= a / (2 * (y + 1) ** 2)
                assert term.value - term.slack <= a / (2 * y ** 2)


def test_iota_segment_domain():
    with pytest.raises(DomainError, match="x >= 0"):
        core.iota_segment(-1.0, 0.5, 1)
    with pytest.raises(DomainError, match="k >= 1"):
        core.iota_segment(0.0, 0.5, 0)


def test_sawtooth_segment():
    assert core.sawtooth_segment(0.0, 1) == pytest.approx(1.5 * LN2 - 1.0, abs=1e-16)
    assert core.sawtooth_segment(0.0, 1) == pytest.approx(0.0397208, abs=1e-7)


def test_sawtooth_segment_decreasing_in_k():
    values = [core.sawtooth_segment(0.0, k) for k in range(1, 11)]
    for k, value in enumerate(values, start=1):
        exact = (k + 0.5) * math.log((k + 1) / k) - 1
        assert value == pytest.approx(exact, rel=1e-12)
    assert all(b < a for a, b in zip(values, values[1:]))


def test_sawtooth_segment_series_branch():
    # both sides of the series threshold agree with the closed form
    for y in (3.5, 4.0, 4.5, 30.0, 1e3):
        k = 1
        x = y - k
        exact = (mpmath.mpf(y) + utils.HALF) * mpmath.log1p(1 / mpmath.mpf(y)) - 1
        term = core.sawtooth_segment_term(x, k)
        assert abs(term.value - exact) <= term.slack + 1e-18


def test_sawtooth_segment_large_argument():
    value = core.sawtooth_segment(1e6, 1)
    assert 0 < value < 1e-12
    assert value == pytest.approx(1 / (12 * (1e6 + 1.5) ** 2), rel=1e-6)


def test_sawtooth_segment_domain():
    with pytest.raises(DomainError, match="x \\+ k > 0"):
        core.sawtooth_segment(-1.0, 1)


def test_sawtooth_partial_first():
    assert core.sawtooth_partial_first(3.0, 1.0) == 0.0
    assert core.sawtooth_partial_first(1.0, 0.0) == pytest.approx(
        1.5 * LN2 - 1.0, abs=1e-16
    )
    assert core.sawtooth_partial_first(0.0, 0.5) == pytest.approx(
        0.5 * LN2 - 0.5, abs=1e-16
    )
    # x + d = 5e-324 is exact; the log of the quotient would overflow
    assert core.sawtooth_partial_first(5e-324, 0.0) == pytest.approx(
        -0.5 * math.log(5e-324) - 1.0, rel=1e-14
    )
    with pytest.raises(DomainError):
        core.sawtooth_partial_first(0.0, 0.0)
    with pytest.raises(DomainError):
        core.sawtooth_partial_first(1.0, 1.5)


def test_mismatch_shift():
    assert core.mismatch_shift(0.3, 0.3, 2.0) == 0.0
    expected = 1.5 * math.log(1.5) - 0.5
    assert core.mismatch_shift(0.5, 0.0, 1.0) == pytest.approx(expected, abs=1e-16)
    assert core.mismatch_shift(0.5, 0.0, 1.0) == pytest.approx(0.1081977, abs=1e-7)


def exact_shift(c, d, x):
    x, c, d = mpmath.mpf(x), mpmath.mpf(c), mpmath.mpf(d)
    return (x + utils.HALF) * mpmath.log((x + c) / (x + d)) - (c - d)


@pytest.mark.parametrize("gap", [1e-12, 1e-9, 1e-6, 1e-3, 0.3])
def test_mismatch_shift_near_domain_edge(gap):
    # x + c close to 0 with x + d = 1
    x = 0.5 + gap
    for c, d in [(-0.5, 0.5), (0.5, -0.5)]:
        term = core.mismatch_shift_term(c, d, x)
        assert abs(term.value - exact_shift(c, d, x)) <= term.slack, (c, d, x)


def test_mismatch_shift_antisymmetry_and_chain():
    for x in (0.5, 1.0, 4.0, 100.0):
        for c, d, e in [(0.5, 0.0, 1.0), (2.0, -0.25, 0.5), (0.1, 0.9, 3.0)]:
            assert core.mismatch_shift(c, d, x) == pytest.approx(
                -core.mismatch_shift(d, c, x), abs=1e-14
            )
            chained = core.mismatch_shift(c, d, x) + core.mismatch_shift(e, c, x)
            assert chained == pytest.approx(core.mismatch_shift(e, d, x), abs=1e-14)


def test_mismatch_shift_relates_stirling_mismatches():
    # m_0(1) = m_1/2(1) + mismatch_shift(1/2, 0, 1)
    lhs = utils.m(0, 1)
    rhs = utils.m(0.5, 1) + core.mismatch_shift(0.5, 0.0, 1.0)
    assert float(lhs) == pytest.approx(float(rhs), abs=1e-15)
    assert float(lhs) == pytest.approx(0.0810615, abs=1e-7)
    assert float(utils.m(0.5, 1)) == pytest.approx(-0.0271362, abs=1e-7)


def test_corr_half():
    assert core.corr_half(2.0, 0.5) == 0.0
    assert core.corr_half(0.0, 1.0) == pytest.approx(0.5 - 0.5 * LN2, abs=1e-16)
    assert core.corr_half(1.0, 0.0) == pytest.approx(0.1081977, abs=1e-7)
    for x, d in [(0.0, 1.0), (1.0, 0.0), (3.0, -0.5), (0.2, 2.0), (50.0, 1e-3)]:
        assert core.corr_half(x, d) == pytest.approx(
            -core.mismatch_shift(d, 0.5, x), abs=1e-14
        )
    with pytest.raises(DomainError):
        core.corr_half(0.5, -0.5)


@pytest.mark.parametrize(
    "x", [0.5 + 1e-12, 0.5 + 1e-9, 0.500001, 0.501, 0.75, 1.0, 2.0, 5.0]
)
def test_corr_half_near_domain_edge(x):
    # x + d runs down to 0 while x + 1/2 stays near 1
    d = -0.5
    term = core.corr_half_term(x, d)
    exact = -exact_shift(d, 0.5, x)
    assert abs(term.value - exact) <= term.slack, x
    assert term.slack < 1e-12


def test_corr_floor():
    assert core.corr_floor(0.2, 0.9, 0.0) == 0.0
    assert core.corr_floor(1.0, 0.0, 3.0) == 0.0
    assert core.corr_floor(1.0, 2.0, 1.0) == pytest.approx(math.log(1.5), abs=1e-16)
    expected = LN2 + 2 * math.log(1.25)
    assert core.corr_floor(0.5, 2.5, 0.0) == pytest.approx(expected, abs=1e-15)
    assert core.corr_floor(0.5, 2.5, 0.0) == pytest.approx(1.1394343, abs=1e-7)


def test_corr_floor_negative_d():
    # floor(t) = -1 on [-1/2, 0)
    assert core.corr_floor(0.5, -0.5, 1.0) == pytest.approx(LN2, abs=1e-15)
    exact = mpmath.quad(lambda t: mpmath.floor(t) / (1 + t), [0.5, 0, -0.5])
    assert core.corr_floor(0.5, -0.5, 1.0) == pytest.approx(float(exact), abs=1e-14)
    with pytest.raises(DomainError):
        core.corr_floor(1.5, 2.0, 1.0)


def test_sawtooth_span_matches_quadrature():
    for x, a, b in [(0.0, 0.5, 3.25), (2.0, -0.5, 0.5), (1.0, 2.0, 0.0)]:
        exact = mpmath.quad(
            lambda t: (utils.HALF - (t - mpmath.floor(t))) / (x + t),
            sorted({a, b, *range(math.ceil(min(a, b)), math.floor(max(a, b)) + 1)}),
        )
        if b < a:
            exact = -exact
        term = core.sawtooth_span_term(x, a, b)
        assert abs(term.value - exact) <= term.slack + 1e-15


def test_sawtooth_segments_telescope():
    # the sum over k = 1..K-1 equals the difference of two tails of m_0
    x, K = 0.75, 40
    values, slack = core.sawtooth_segments(x, 1, K)
    exact = utils.m(0, x + 1) - utils.m(0, x + K)
    assert abs(math.fsum(values) - exact) <= slack + 1e-15


def test_vectorized_segments_match_scalar():
    values, slack = core.iota_segments(1.25, 0.375, 1, 200)
    for k, value in zip(range(1, 200), values):
        assert value == pytest.approx(core.iota_segment(1.25, 0.375, k), rel=1e-13)
    assert slack > 0

    values, slack = core.sawtooth_segments(0.5, 1, 200)
    for k, value in zip(range(1, 200), values):
        assert value == pytest.approx(core.sawtooth_segment(0.5, k), rel=1e-13)

    with pytest.raises(DomainError):
        core.sawtooth_segments(-1.0, 1, 5)


def test_two_sum_is_exact():
    rng = random.Random(7)
    for _ in range(1000):
        a = rng.uniform(-1, 1) * 10 ** rng.randint(-10, 10)
        b = rng.uniform(-1, 1) * 10 ** rng.randint(-10, 10)
        s, t = core.two_sum(a, b)
        assert Fraction(s) + Fraction(t) == Fraction(a) + Fraction(b)


def test_compensated_sum():
    acc = CompensatedSum()
    for value in (1e16, 1.0, -1e16, 1.0):
        acc += value
    assert acc.value == 2.0
    assert CompensatedSum(0.5).add(0.25).value == 0.75


def test_enclosure_validation():
    with pytest.raises(DomainError, match="lo <= hi"):
        Enclosure(1.0, 0.0)
    with pytest.raises(DomainError, match="finite"):
        Enclosure(0.0, math.inf)
    with pytest.raises(DomainError, match="finite"):
        Enclosure(math.nan, 0.0)
    e = Enclosure(-1.0, 3.0)
    assert e.width() == 4.0
    assert e.midpoint() == 1.0
    assert e.width_met
    assert e.contains(3.0)
    assert not e.contains(3.5)
    assert e.contains(3.5, slack=0.5)
    assert e.overlaps(Enclosure(3.0, 4.0))
    assert not e.overlaps(Enclosure(3.5, 4.0))


def test_enclosure_addition_is_outward():
    rng = random.Random(2021)
    for _ in range(10 ** 4):
        a_lo = rng.uniform(-1, 1)
        b_lo = rng.uniform(-1, 1) * 10 ** rng.randint(-8, 0)
        a = Enclosure(a_lo, a_lo + rng.random() * 1e-3)
        b = Enclosure(b_lo, b_lo + rng.random() * 1e-6)
        total = a + b
        assert Fraction(total.lo) <= Fraction(a.lo) + Fraction(b.lo)
        assert Fraction(total.hi) >= Fraction(a.hi) + Fraction(b.hi)


def test_enclosure_arithmetic():
    a = Enclosure(1.0, 2.0)
    assert (-a) == Enclosure(-2.0, -1.0)
    diff = a - Enclosure(0.5, 0.75)
    assert diff.lo <= 0.25 and diff.hi >= 1.5
    assert (a + 1.0).contains(2.5)
    assert (1.0 - a).contains(-0.5)
    scaled = a.scale(-3.0)
    assert scaled.lo <= -6.0 and scaled.hi >= -3.0
    assert a.scale(-1.0) == Enclosure(-2.0, -1.0)
    widened = a.widen(0.125)
    assert widened.lo <= 0.875 and widened.hi >= 2.125
    assert a.widen(0.0) is a
    exp = Enclosure(0.0, 1.0).exp()
    assert exp.lo <= 1.0 and exp.hi >= math.e
    assert not (a + Enclosure(0, 1, width_met=False)).width_met


def test_enclosure_from_term():
    e = Enclosure.from_term(Term(1.0, 1e-12))
    assert e.lo < 1.0 - 1e-12 < 1.0 + 1e-12 < e.hi
    assert Enclosure.point(0.25) == Enclosure(0.25, 0.25)


def test_interp_point():
    p = InterpPoint(2, 0.25)
    assert p.y() == 2.25
    assert isinstance(p.x, float)
    with pytest.raises(DomainError, match="x >= 0"):
        InterpPoint(-0.5, 0.5)
    with pytest.raises(DomainError, match="alpha"):
        InterpPoint(0.0, 1.5)


def test_stirling_shift_domains():
    zero = StirlingShift(0)
    assert not zero.contains(0.0)
    assert zero.contains(1e-300)
    assert not zero.contains_point(InterpPoint(0, 0))
    assert zero.contains_point(InterpPoint(0, 0.5))
    assert StirlingShift(-0.5).contains(0.75)
    assert not StirlingShift(-0.5).contains(0.5)
    assert StirlingShift(2).contains(0.0)
    with pytest.raises(DomainError, match="outside D_d"):
        zero.require(0.0)
    with pytest.raises(DomainError, match="interpolated domain"):
        StirlingShift(-1).require_point((0.25, 0.5))
    with pytest.raises(DomainError, match="finite"):
        StirlingShift(math.inf)


def test_rounding_slack():
    assert core.rounding_slack(0.0) == 0.0
    assert core.rounding_slack(1.0, ops=2) == 2 * core.SLACK_ULPS * math.ulp(1.0)
