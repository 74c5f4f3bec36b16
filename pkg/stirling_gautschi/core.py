"""Domain types, enclosure arithmetic and exact per-period integrals

Every identity evaluator in this package is a sum of closed-form integrals
over unit periods plus an analytically bounded tail.  This module provides
the closed forms, both as scalar functions and as vectorized kernels that
also report how much rounding slack their results carry.

Rounding convention:

- A float produced by ``n`` rounded operations is trusted to within
  ``4 * n`` units in the last place of the magnitudes involved.
- Enclosure arithmetic widens every inexact result outward by the same
  4-ulp slack, so intervals only ever grow.
"""

import math
from collections import namedtuple

import numpy as np

#: ulps of slack charged per rounded operation
SLACK_ULPS = 4

#: sawtooth segments switch to the atanh series once x+k reaches this
SAWTOOTH_SERIES_THRESHOLD = 4.0
#: terms of the atanh series; the omitted remainder is folded into the slack
SAWTOOTH_SERIES_TERMS = 9


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation"""


class RouteMismatchError(ArithmeticError):
    """Two decompositions of the same mismatch produced disjoint enclosures"""


def _ulp(value):
    if value == 0:
        return 0.0
    return math.ulp(value)


def rounding_slack(*magnitudes, ops=1):
    """Slack for a result built from ``ops`` roundings of the given magnitudes"""
    return SLACK_ULPS * ops * sum(_ulp(abs(m)) for m in magnitudes)


def _array_slack(magnitudes, ops):
    spacing = np.where(magnitudes > 0, np.spacing(np.abs(magnitudes)), 0.0)
    return SLACK_ULPS * ops * float(np.sum(spacing))


def two_sum(a, b):
    """Error-free transformation: a + b == s + t exactly"""
    s = a + b
    ap = s - b
    bp = s - ap
    return s, (a - ap) + (b - bp)


def _down(value):
    return value - SLACK_ULPS * _ulp(value)


def _up(value):
    return value + SLACK_ULPS * _ulp(value)


class CompensatedSum:
    """Running sum that keeps the rounding error of every addition

    Like :func:`math.fsum`, but usable when terms arrive one at a time.
    """

    def __init__(self, value=0.0):
        self._s = float(value)
        self._t = 0.0

    def add(self, value):
        y, u = two_sum(float(value), self._t)
        self._s, self._t = two_sum(y, self._s)
        self._t += u
        return self

    def __iadd__(self, value):
        return self.add(value)

    @property
    def value(self):
        return self._s + self._t


Term = namedtuple("Term", ["value", "slack"])
Term.__doc__ = """A computed float and the absolute rounding slack it carries"""


class Enclosure(namedtuple("Enclosure", ["lo", "hi", "width_met"])):
    """A closed interval [lo, hi] certified to contain a real value

    ``width_met`` is False when the evaluator could not reach the requested
    width within its period cap; the interval is still a valid enclosure.
    """

    __slots__ = ()

    def __new__(cls, lo, hi, width_met=True):
        lo = float(lo)
        hi = float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"enclosure bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise DomainError(f"enclosure requires lo <= hi, got [{lo}, {hi}]")
        return super().__new__(cls, lo, hi, bool(width_met))

    @classmethod
    def point(cls, value, slack=0.0):
        """Enclose a computed value known to within ``slack``"""
        if slack == 0:
            return cls(value, value)
        return cls(_down(value - slack), _up(value + slack))

    @classmethod
    def from_term(cls, term):
        return cls.point(term.value, term.slack)

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return self.lo + 0.5 * (self.hi - self.lo)

    def contains(self, value, slack=0.0):
        return self.lo - slack <= value <= self.hi + slack

    def overlaps(self, other, slack=0.0):
        return self.lo - slack <= other.hi and other.lo - slack <= self.hi

    def __add__(self, other):
        if isinstance(other, Term):
            other = Enclosure.from_term(other)
        if isinstance(other, Enclosure):
            olo, ohi, met = other.lo, other.hi, other.width_met
        else:
            olo = ohi = float(other)
            met = True
        lo, lo_err = two_sum(self.lo, olo)
        hi, hi_err = two_sum(self.hi, ohi)
        return Enclosure(
            lo if lo_err == 0 else _down(lo),
            hi if hi_err == 0 else _up(hi),
            self.width_met and met,
        )

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.width_met)

    def __sub__(self, other):
        if isinstance(other, Term):
            other = Enclosure.from_term(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        """Multiply by an exact constant"""
        a = self.lo * factor
        b = self.hi * factor
        lo, hi = min(a, b), max(a, b)
        if factor not in (1.0, -1.0, 0.0):
            lo, hi = _down(lo), _up(hi)
        return Enclosure(lo, hi, self.width_met)

    def widen(self, slack):
        if slack == 0:
            return self
        return Enclosure(_down(self.lo - slack), _up(self.hi + slack), self.width_met)

    def exp(self):
        return Enclosure(
            max(_down(math.exp(self.lo)), 0.0), _up(math.exp(self.hi)), self.width_met
        )

    def with_width_met(self, width_met):
        return self._replace(width_met=bool(width_met))

    def __repr__(self):
        flag = "" if self.width_met else ", width not met"
        return f"Enclosure([{self.lo!r}, {self.hi!r}]{flag})"


class InterpPoint(namedtuple("InterpPoint", ["x", "alpha"])):
    """An argument (x, alpha) of the interpolated pi function, x >= 0, 0 <= alpha <= 1"""

    __slots__ = ()

    def __new__(cls, x, alpha):
        x = float(x)
        alpha = float(alpha)
        if not (math.isfinite(x) and x >= 0):
            raise DomainError(f"interpolation point requires x >= 0, got x={x}")
        if not 0 <= alpha <= 1:
            raise DomainError(
                f"interpolation point requires 0 <= alpha <= 1, got alpha={alpha}"
            )
        return super().__new__(cls, x, alpha)

    def y(self):
        return self.x + self.alpha


class StirlingShift(namedtuple("StirlingShift", ["d"])):
    """The shift d of the Stirling family S_d and its domains

    D_d holds the x >= 0 with x > -d; the interpolated domain holds the
    points (x, alpha) with x + alpha > -d.
    """

    __slots__ = ()

    def __new__(cls, d):
        d = float(d)
        if not math.isfinite(d):
            raise DomainError(f"Stirling shift must be finite, got d={d}")
        return super().__new__(cls, d)

    def contains(self, x):
        return x >= 0 and x + self.d > 0

    def contains_point(self, p):
        return p.x + p.alpha + self.d > 0

    def require(self, x):
        if not self.contains(x):
            raise DomainError(
                f"x={x} is outside D_d for d={self.d} (needs x >= 0 and x + d > 0)"
            )
        return x

    def require_point(self, p):
        p = InterpPoint(*p)
        if not self.contains_point(p):
            raise DomainError(
                f"{tuple(p)} is outside the interpolated domain for d={self.d}"
                " (needs x + alpha + d > 0)"
            )
        return p


def frac(t):
    """Fractional part t - floor(t), in [0, 1) also for negative t"""
    return t - math.floor(t)


def _require_unit(name, value):
    if not 0 <= value <= 1:
        raise DomainError(f"{name} must lie in [0, 1], got {name}={value}")


def phi(alpha, t):
    """The 1-periodic step kernel: 1 - alpha where frac(t) <= alpha, else -alpha"""
    _require_unit("alpha", alpha)
    if frac(t) <= alpha:
        return 1.0 - alpha
    return -alpha


def sawtooth(t):
    """The 1-periodic kernel 1/2 - frac(t)"""
    return 0.5 - frac(t)


def _log1p_defect(u):
    """u - log1p(u) without cancellation for small u"""
    if abs(u) > 0.125:
        return u - math.log1p(u)
    total = 0.0
    power = u * u
    for n in range(2, 22):
        total += power / n if n % 2 == 0 else -power / n
        power *= u
    return total


def iota_segment_term(x, alpha, k):
    if x < 0:
        raise DomainError(f"iota_segment requires x >= 0, got x={x}")
    _require_unit("alpha", alpha)
    if k < 1:
        raise DomainError(f"iota_segment requires k >= 1, got k={k}")
    y = x + k
    t1 = (1.0 - alpha) * math.log1p(alpha / y)
    t2 = alpha * math.log1p((alpha - 1.0) / (y + 1.0))
    # the exact integral is non-negative
    return Term(max(t1 + t2, 0.0), rounding_slack(t1, t2, ops=5))


def iota_segment(x, alpha, k):
    """Integral of phi_alpha(t)/(x+t) over [k, k+1]"""
    return iota_segment_term(x, alpha, k).value


def _sawtooth_series(h2):
    acc = 1.0 / (2 * SAWTOOTH_SERIES_TERMS + 1)
    for j in range(SAWTOOTH_SERIES_TERMS - 1, 0, -1):
        acc = 1.0 / (2 * j + 1) + h2 * acc
    return h2 * acc


def _sawtooth_series_remainder(h2):
    n = SAWTOOTH_SERIES_TERMS + 1
    return h2 ** n / ((2 * n + 1) * (1.0 - h2))


def sawtooth_segment_term(x, k):
    y = x + k
    if not y > 0:
        raise DomainError(f"sawtooth_segment requires x + k > 0, got {x} + {k}")
    if y >= SAWTOOTH_SERIES_THRESHOLD:
        h = 1.0 / (2.0 * y + 1.0)
        h2 = h * h
        value = _sawtooth_series(h2)
        ops = 2 * SAWTOOTH_SERIES_TERMS + 4
        slack = rounding_slack(value, ops=ops) + _sawtooth_series_remainder(h2)
        return Term(value, slack)
    product = (y + 0.5) * math.log1p(1.0 / y)
    return Term(max(product - 1.0, 0.0), rounding_slack(product, 1.0, ops=4))


def sawtooth_segment(x, k):
    """Integral of (1/2 - frac(t))/(x+t) over [k, k+1]"""
    return sawtooth_segment_term(x, k).value


def _log_ratio_term(num, den, diff):
    """log(num / den) for num = den + diff, both positive and each rounded once

    Near 1 the ratio goes through log1p(diff / den), whose error is at most
    twice the error of its argument there.  Elsewhere the two logarithms are
    taken separately, so a quotient close to 0 or to infinity never enters.
    """
    if 0.5 * den <= num <= 2.0 * den:
        v = diff / den
        value = math.log1p(v)
        return Term(value, rounding_slack(value) + 2.0 * rounding_slack(v, ops=3))
    log_num = math.log(num)
    log_den = math.log(den)
    value = log_num - log_den
    # an argument rounded once moves its log by up to one ulp of 1.0
    return Term(value, rounding_slack(log_num, log_den, value, 1.0, ops=2))


def sawtooth_partial_first_term(x, d):
    _require_unit("d", d)
    if not x + d > 0:
        raise DomainError(f"sawtooth_partial_first requires x + d > 0, got {x} + {d}")
    length = 1.0 - d
    base = x + 0.5
    ratio = _log_ratio_term(x + 1.0, x + d, length)
    product = base * ratio.value
    slack = rounding_slack(product, length, ops=3) + base * ratio.slack
    return Term(product - length, slack)


def sawtooth_partial_first(x, d):
    """Integral of (1/2 - t)/(x+t) over [d, 1]"""
    return sawtooth_partial_first_term(x, d).value


def mismatch_shift_term(c, d, x):
    if not (x + c > 0 and x + d > 0):
        raise DomainError(
            f"mismatch_shift requires x + c > 0 and x + d > 0, got x={x}, c={c}, d={d}"
        )
    if c == d:
        return Term(0.0, 0.0)
    length = c - d
    base = x + 0.5
    ratio = _log_ratio_term(x + c, x + d, length)
    product = base * ratio.value
    slack = rounding_slack(product, length, ops=4) + abs(base) * ratio.slack
    return Term(product - length, slack)


def mismatch_shift(c, d, x):
    """Integral of (1/2 - t)/(x+t) from d to c, so that m_d = m_c + mismatch_shift"""
    return mismatch_shift_term(c, d, x).value


def corr_half_term(x, d):
    if not (x + d > 0 and x + 0.5 > 0):
        raise DomainError(
            f"corr_half requires x + d > 0 and x + 1/2 > 0, got x={x}, d={d}"
        )
    base = x + 0.5
    u = (d - 0.5) / base
    if u >= -0.5:
        # u - log1p(u) has slope u / (1 + u), at most 2|u| in size here
        value = base * _log1p_defect(u)
        slack = rounding_slack(value, ops=6)
        slack += base * 2.0 * abs(u) * rounding_slack(u, ops=3)
        return Term(value, slack)
    # x + d is small against x + 1/2, where u carries its error into log1p(u)
    # amplified by 1 / (1 + u)
    ratio = _log_ratio_term(x + d, base, d - 0.5)
    product = base * ratio.value
    value = (d - 0.5) - product
    slack = rounding_slack(d - 0.5, product, value, ops=3) + base * ratio.slack
    return Term(value, slack)


def corr_half(x, d):
    """Integral of (t - 1/2)/(x+t) from 1/2 to d"""
    return corr_half_term(x, d).value


def _floor_cells(a, b):
    """Yield (j, lo, hi) covering [a, b] with floor(t) == j on each cell"""
    j = math.floor(a)
    lo = a
    while lo < b:
        hi = min(b, j + 1.0)
        yield j, lo, hi
        j += 1
        lo = hi


def corr_floor_term(c, d, x):
    _require_unit("c", c)
    if not (x + c > 0 and x + d > 0):
        raise DomainError(
            f"corr_floor requires x + c > 0 and x + d > 0, got x={x}, c={c}, d={d}"
        )
    sign = 1.0
    a, b = c, d
    if b < a:
        a, b, sign = b, a, -1.0
    terms = [
        j * math.log1p((hi - lo) / (x + lo)) for j, lo, hi in _floor_cells(a, b) if j
    ]
    value = math.fsum(terms)
    return Term(sign * value, rounding_slack(*terms, ops=4) + _ulp(value))


def corr_floor(c, d, x):
    """Integral of floor(t)/(x+t) from c to d, evaluated cell by cell"""
    return corr_floor_term(c, d, x).value


def sawtooth_span_term(x, a, b):
    if not x + min(a, b) > 0:
        raise DomainError(f"sawtooth_span requires x + min(a, b) > 0, got x={x}")
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    terms = []
    for j, lo, hi in _floor_cells(a, b):
        length = hi - lo
        terms.append((x + j + 0.5) * math.log1p(length / (x + lo)))
        terms.append(-length)
    value = math.fsum(terms)
    return Term(sign * value, rounding_slack(*terms, ops=5) + _ulp(value))


def sawtooth_span(x, a, b):
    """Integral of (1/2 - frac(t))/(x+t) from a to b"""
    return sawtooth_span_term(x, a, b).value


def iota_segments(x, alpha, k_start, k_stop):
    """Per-period Gautschi integrals for k in [k_start, k_stop)

    Returns the values as an array together with the summed rounding slack
    of all of them.
    """
    k = np.arange(k_start, k_stop, dtype=np.float64)
    y = x + k
    t1 = (1.0 - alpha) * np.log1p(alpha / y)
    t2 = alpha * np.log1p((alpha - 1.0) / (y + 1.0))
    values = np.maximum(t1 + t2, 0.0)
    return values, _array_slack(np.abs(t1) + np.abs(t2), ops=5)


def sawtooth_segments(x, k_start, k_stop):
    """Per-period sawtooth integrals for k in [k_start, k_stop), with summed slack"""
    k = np.arange(k_start, k_stop, dtype=np.float64)
    y = x + k
    if y.size and not y[0] > 0:
        raise DomainError(
            f"sawtooth_segments requires x + k > 0, got x={x}, k={k_start}"
        )
    values = np.empty_like(y)
    far = y >= SAWTOOTH_SERIES_THRESHOLD
    near = ~far

    h = 1.0 / (2.0 * y[far] + 1.0)
    h2 = h * h
    values[far] = _sawtooth_series(h2)
    slack = _array_slack(values[far], ops=2 * SAWTOOTH_SERIES_TERMS + 4)
    if h2.size:
        slack += float(np.sum(_sawtooth_series_remainder(h2)))

    if np.any(near):
        yn = y[near]
        product = (yn + 0.5) * np.log1p(1.0 / yn)
        values[near] = np.maximum(product - 1.0, 0.0)
        slack += _array_slack(np.maximum(product, 1.0), ops=4)
    return values, slack
