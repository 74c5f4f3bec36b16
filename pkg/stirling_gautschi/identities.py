"""Certified enclosures of the Gautschi, Stirling and Stirling-Gautschi mismatches

Each mismatch is an improper integral of a 1-periodic kernel against
1/(x+t).  The evaluators sum the exact per-period closed forms from
:mod:`stirling_gautschi.core` for the first K periods and enclose the rest
with a telescoping bracket, picking K so the bracket is at most half of the
requested width.
"""

import logging
import math

from traitlets import Float, HasTraits, Integer, TraitError, validate

from . import core
from .core import (
    DomainError,
    Enclosure,
    InterpPoint,
    RouteMismatchError,
    StirlingShift,
    Term,
)

log = logging.getLogger(__name__)

MIN_TARGET_WIDTH = 1e-13
MIN_PI_TARGET_WIDTH = 1e-12

SQRT2_1 = math.sqrt(2.0) - 1.0
SQRT10_3 = math.sqrt(10.0) - 3.0

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


class TailPolicy(HasTraits):
    """How far the per-period sums are carried before the tail is enclosed"""

    target_width = Float(
        1e-10, help="""Absolute width the returned enclosure should not exceed."""
    )

    max_periods = Integer(
        10 ** 6, help="""Cap on the number of periods summed exactly."""
    )

    @validate("target_width")
    def _check_target_width(self, proposal):
        value = proposal["value"]
        if not value >= MIN_TARGET_WIDTH:
            raise TraitError(
                f"target_width must be at least {MIN_TARGET_WIDTH}, got {value}"
            )
        return value

    @validate("max_periods")
    def _check_max_periods(self, proposal):
        value = proposal["value"]
        if value < 1:
            raise TraitError(f"max_periods must be at least 1, got {value}")
        return value

    def __init__(self, target_width=1e-10, max_periods=10 ** 6, **kwargs):
        super().__init__(target_width=target_width, max_periods=max_periods, **kwargs)

    def scaled(self, factor):
        """A policy asking for ``factor`` times the width, never below the floor"""
        return TailPolicy(
            max(self.target_width * factor, MIN_TARGET_WIDTH), self.max_periods
        )

    def halved(self):
        return self.scaled(0.5)

    def key(self):
        return (self.target_width, self.max_periods)

    def __repr__(self):
        return f"TailPolicy(target_width={self.target_width!r}, max_periods={self.max_periods!r})"


DEFAULT_POLICY = TailPolicy()


def _policy(policy):
    if policy is None:
        return DEFAULT_POLICY
    if isinstance(policy, TailPolicy):
        return policy
    return TailPolicy(target_width=float(policy))


def _require_point(p):
    if isinstance(p, InterpPoint):
        return p
    return InterpPoint(*p)


def _bracket(lo, hi):
    """Enclose [lo, hi] where each end came from a few roundings"""
    return Enclosure(core._down(lo), core._up(hi))


# Gautschi mismatch ----------------------------------------------------------


def iota_tail(x, alpha, periods):
    """Enclosure of the sum of all segments past ``periods``

    Each segment k lies between A/(2(y+1/2)(y+3/2)) and A/(2 y^2), with
    y = x + k and A = alpha(1 - alpha); both telescope.
    """
    a = alpha * (1.0 - alpha)
    if a == 0:
        return Enclosure(0.0, 0.0)
    y = x + periods
    return _bracket(0.5 * a / (y + 1.5), 0.5 * a / (y + 0.5))


def iota_periods_needed(x, alpha, target_width):
    """Smallest K whose tail bracket is at most half of ``target_width``"""
    a = alpha * (1.0 - alpha)
    if a == 0:
        return 1
    # width of the bracket is a / (2 (Y + 1/2)(Y + 3/2)) with Y = x + K
    y_min = -1.0 + math.sqrt(0.25 + a / target_width)
    return max(1, math.ceil(y_min - x))


def iota_ladder(x0, alpha, count, policy=None):
    """Enclosures of the Gautschi mismatch at x0, x0+1, ..., x0+count-1

    One summation serves every rung: moving from x to x+1 drops the first
    segment and leaves the tail untouched.
    """
    policy = _policy(policy)
    p = InterpPoint(x0, alpha)
    if count < 1:
        raise DomainError(f"iota_ladder needs at least one rung, got count={count}")
    periods = max(iota_periods_needed(p.x, p.alpha, policy.target_width), count)
    width_met = True
    if periods > policy.max_periods:
        if count > policy.max_periods:
            raise DomainError(
                f"a ladder of {count} rungs needs more than max_periods={policy.max_periods}"
            )
        log.warning(
            "Gautschi mismatch at x=%s, alpha=%s needs %i periods; capped at %i",
            p.x,
            p.alpha,
            periods,
            policy.max_periods,
        )
        periods = policy.max_periods
        width_met = False

    tail = iota_tail(p.x, p.alpha, periods)
    if tail.lo == tail.hi == 0.0:
        return [Enclosure(0.0, 0.0) for _ in range(count)]

    # values[i] is the segment k = i + 1
    values, slack = core.iota_segments(p.x, p.alpha, 1, periods + 1)
    base = math.fsum(values[count - 1 :])
    rungs = []
    for j in range(count):
        head = values[j : count - 1]
        partial = math.fsum([base, *head]) if len(head) else base
        term = Term(partial, slack + core._ulp(base) + core._ulp(partial))
        enclosure = Enclosure.from_term(term) + tail
        met = width_met and enclosure.width() <= policy.target_width
        rungs.append(enclosure.with_width_met(met))
    return rungs


def iota_enclosure(p, policy=None):
    """Certified enclosure of log(Pi_hat(x, alpha) / Pi(x + alpha))"""
    p = _require_point(p)
    return iota_ladder(p.x, p.alpha, 1, policy)[0]


# Stirling mismatch ----------------------------------------------------------


def sawtooth_tail(x, periods):
    """Enclosure of the sawtooth integral from periods + 1 to infinity

    This is the classical mismatch at Y = x + periods + 1, bracketed by
    1/(12Y + 6(sqrt(10) - 3)) and 1/(12Y) once Y >= 1 and by the weaker
    sqrt(2) - 1 constant below that.
    """
    y = x + periods + 1.0
    c = SQRT10_3 if y >= 1 else SQRT2_1
    return _bracket(1.0 / (12.0 * y + 6.0 * c), 1.0 / (12.0 * y))


def sawtooth_periods_needed(x, target_width):
    """Smallest K whose sawtooth tail bracket is at most half of ``target_width``"""
    c = 6.0 * SQRT10_3
    half = 0.5 * target_width
    # bracket width c / (Z (Z + c)) with Z = 12 (x + K + 1)
    z_min = 0.5 * (-c + math.sqrt(c * c + 4.0 * c / half))
    return max(1, math.ceil(z_min / 12.0 - x - 1.0))


def sawtooth_enclosure(d, x, policy=None):
    """Certified enclosure of the sawtooth integral from d to infinity, d in [0, 1]"""
    policy = _policy(policy)
    if not 0 <= d <= 1:
        raise DomainError(f"sawtooth_enclosure requires 0 <= d <= 1, got d={d}")
    if not x + d > 0:
        raise DomainError(f"sawtooth_enclosure requires x + d > 0, got x={x}, d={d}")

    periods = sawtooth_periods_needed(x, policy.target_width)
    width_met = True
    if periods > policy.max_periods:
        log.warning(
            "Stirling mismatch at x=%s needs %i periods; capped at %i",
            x,
            periods,
            policy.max_periods,
        )
        periods = policy.max_periods
        width_met = False

    first = core.sawtooth_partial_first_term(x, d)
    values, slack = core.sawtooth_segments(x, 1, periods + 1)
    total = math.fsum([first.value, *values])
    body = Term(total, slack + first.slack + core._ulp(total))
    enclosure = Enclosure.from_term(body) + sawtooth_tail(x, periods)
    return enclosure.with_width_met(
        width_met and enclosure.width() <= policy.target_width
    )


def _floor_route(d, x, policy, c):
    if not x + c > 0:
        raise DomainError(f"the floor decomposition needs x + c > 0, got x={x}, c={c}")
    enclosure = sawtooth_enclosure(c, x, policy)
    enclosure = enclosure + core.sawtooth_span_term(x, d, c)
    return enclosure + core.corr_floor_term(c, d, x)


def m_enclosure(d, x, policy=None, cross_check=False, c=0.5):
    """Certified enclosure of log(Pi(x) / S_d(x))

    For d in [0, 1] this is the sawtooth integral from d.  Other shifts go
    through d = 1/2 plus the exact correction integral.  With
    ``cross_check`` the floor-integral decomposition at ``c`` is computed
    too and must overlap.
    """
    policy = _policy(policy)
    StirlingShift(d).require(x)
    if 0 <= d <= 1:
        enclosure = sawtooth_enclosure(d, x, policy)
    else:
        enclosure = sawtooth_enclosure(0.5, x, policy) + core.corr_half_term(x, d)

    if cross_check:
        other = _floor_route(d, x, policy, c)
        if not enclosure.overlaps(other):
            log.warning(
                "Stirling mismatch routes disagree at d=%s, x=%s: %r vs %r",
                d,
                x,
                enclosure,
                other,
            )
            raise RouteMismatchError(
                f"m_d decompositions do not overlap at d={d}, x={x}, c={c}"
            )
    return enclosure


def _argument_slack(d, y, err):
    """Bound on |m_d(y + err) - m_d(y)| for the rounding error err of y"""
    if err == 0:
        return 0.0
    # digamma(y + 1) lies within 1/(y + 1) of log(y + 1)
    slope = abs(math.log((y + 1.0) / (y + d))) + 1.0 / (y + 1.0)
    slope += abs(d - 0.5) / (y + d)
    return 2.0 * slope * abs(err)


def compose_mhat(d, p, iota, m, target_width):
    """Add an enclosure of the Gautschi mismatch at p to one of m_d at fl(x + alpha)"""
    y, err = core.two_sum(p.x, p.alpha)
    enclosure = iota + m.widen(_argument_slack(d, y, err))
    return enclosure.with_width_met(
        enclosure.width_met and enclosure.width() <= target_width
    )


def mhat_enclosure(d, p, policy=None):
    """Certified enclosure of log(Pi_hat(x, alpha) / S_d(x + alpha))"""
    policy = _policy(policy)
    p = StirlingShift(d).require_point(p)
    half = policy.halved()
    m = m_enclosure(d, p.x + p.alpha, half)
    return compose_mhat(d, p, iota_enclosure(p, half), m, policy.target_width)


# Certified pi function -------------------------------------------------------


def log_s_half_term(x):
    """log S_{1/2}(x) = log(2 pi)/2 + (x + 1/2)(log(x + 1/2) - 1), with slack"""
    base, err = core.two_sum(x, 0.5)
    log_base = math.log(base)
    product = base * log_base
    value = math.fsum([HALF_LOG_2PI, product, -base])
    slack = core.rounding_slack(HALF_LOG_2PI, product, base, value, ops=3)
    slack += abs(err) * (abs(log_base) + 1.0)
    return Term(value, slack)


def pi_enclosure(x, target_width=1e-12, max_periods=10 ** 6):
    """Certified enclosure of log Pi(x) = log Gamma(x + 1)

    Uses log Pi(x) = log S_{1/2}(x+n) + m_{1/2}(x+n) - sum_{j=1..n} log(x+j),
    with the shift n only as large as the period cap forces.
    """
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"pi_enclosure requires x >= 0, got x={x}")
    if not target_width >= MIN_PI_TARGET_WIDTH:
        raise DomainError(
            f"pi_enclosure requires target_width >= {MIN_PI_TARGET_WIDTH}, got {target_width}"
        )
    policy = TailPolicy(0.5 * target_width, max_periods)
    needed = sawtooth_periods_needed(x, policy.target_width)
    shift = max(0, needed - max_periods)

    y, err = core.two_sum(x, float(shift))
    if err:
        raise DomainError(f"pi_enclosure cannot shift x={x} exactly by {shift}")
    enclosure = m_enclosure(0.5, y, policy) + log_s_half_term(y)

    if shift:
        logs = [math.log(x + j) for j in range(1, shift + 1)]
        total = math.fsum(logs)
        slack = core.rounding_slack(*logs, ops=2) + core._ulp(total)
        enclosure = enclosure - Term(total, slack)
        log.debug("pi_enclosure shifted x=%s by %i", x, shift)

    return enclosure.with_width_met(
        enclosure.width_met and enclosure.width() <= target_width
    )


def pi_enclosure_exp(x, target_width=1e-12):
    """Certified enclosure of Pi(x) itself"""
    return pi_enclosure(x, target_width).exp()


def factorial_hat_enclosure(x, target_width=1e-12):
    """Certified enclosure of log of the interpolated factorial at x"""
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"factorial_hat_enclosure requires x >= 0, got x={x}")
    n = math.floor(x)
    alpha = x - n
    enclosure = pi_enclosure(float(n), target_width)
    if alpha:
        value = alpha * math.log1p(n)
        enclosure = enclosure + Term(value, core.rounding_slack(value, ops=2))
    return enclosure
