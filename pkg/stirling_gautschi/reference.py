"""Fast, uncertified reference values

These evaluate the pi function, the Stirling family and the three mismatch
functions directly from a log-gamma oracle.  They cross-check the certified
enclosures; they are never used to build one.
"""

import math
from collections import namedtuple

from .core import DomainError, InterpPoint, StirlingShift

# log Gamma(z) is evaluated by the Stirling series once z reaches this
_UPSHIFT_TO = 12.0

# B_{2k} / (2k (2k - 1)) for k = 1..10
_STIRLING_COEFFICIENTS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _stirling_lgamma(w):
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0
    for coefficient in reversed(_STIRLING_COEFFICIENTS):
        series = coefficient + inv2 * series
    return math.fsum([(w - 0.5) * math.log(w), -w, HALF_LOG_2PI, series * inv])


def lgamma_ref(z):
    """log Gamma(z) for z > 0

    Small arguments are shifted up with Gamma(z + 1) = z Gamma(z) before the
    Stirling series is applied; the product of the shifts is logged once.
    """
    if not (math.isfinite(z) and z > 0):
        raise DomainError(f"lgamma_ref requires z > 0, got z={z}")
    if z >= _UPSHIFT_TO:
        return _stirling_lgamma(z)
    shift = math.ceil(_UPSHIFT_TO - z)
    product = 1.0
    for j in range(shift):
        product *= z + j
    return _stirling_lgamma(z + shift) - math.log(product)


def log_pi_fn(x):
    """log Pi(x) = log Gamma(x + 1)"""
    if not x >= 0:
        raise DomainError(f"log_pi_fn requires x >= 0, got x={x}")
    return lgamma_ref(x + 1.0)


def log_s(d, x):
    """log S_d(x) = log(2 pi)/2 - d + (x + 1/2) log(x + d) - x"""
    if not x + d > 0:
        raise DomainError(
            f"log_s requires x + d > 0, got x={x}, d={d} (S_d vanishes at x = -d)"
        )
    return HALF_LOG_2PI - d + (x + 0.5) * math.log(x + d) - x


def log_pi_hat(p):
    """log of the interpolated pi function, log Pi(x) + alpha log(x + 1)"""
    p = InterpPoint(*p)
    return log_pi_fn(p.x) + p.alpha * math.log1p(p.x)


def log_factorial_hat(x):
    """log of the interpolated factorial, Pi_hat(floor(x), frac(x))"""
    if not x >= 0:
        raise DomainError(f"log_factorial_hat requires x >= 0, got x={x}")
    n = math.floor(x)
    return log_pi_hat((n, x - n))


class MismatchKind(namedtuple("MismatchKind", ["family", "d"])):
    """Which mismatch: the Gautschi one, m_d, or the interpolated m_d"""

    __slots__ = ()

    IOTA = "iota"
    M = "m"
    MHAT = "mhat"

    def __new__(cls, family, d=None):
        if family not in (cls.IOTA, cls.M, cls.MHAT):
            raise DomainError(f"unknown mismatch family {family!r}")
        if family == cls.IOTA:
            d = None
        elif d is None:
            raise DomainError(f"mismatch family {family!r} needs a shift d")
        else:
            d = StirlingShift(d).d
        return super().__new__(cls, family, d)

    @classmethod
    def iota(cls):
        return cls(cls.IOTA)

    @classmethod
    def m(cls, d):
        return cls(cls.M, d)

    @classmethod
    def mhat(cls, d):
        return cls(cls.MHAT, d)

    @property
    def interpolated(self):
        """True when the argument is a point (x, alpha) rather than x"""
        return self.family != self.M

    def contains(self, x, alpha=0.0):
        if not (x >= 0 and 0 <= alpha <= 1):
            return False
        if self.family == self.IOTA:
            return True
        return x + alpha + self.d > 0

    def __str__(self):
        if self.family == self.IOTA:
            return "Iota"
        name = "M" if self.family == self.M else "MHat"
        return f"{name}({self.d:g})"


def mismatch_ref(kind, arg):
    """Reference value of a mismatch at x (for M) or at a point (x, alpha)"""
    if kind.family == MismatchKind.M:
        x = float(arg)
        StirlingShift(kind.d).require(x)
        return log_pi_fn(x) - log_s(kind.d, x)

    p = InterpPoint(*arg)
    if kind.family == MismatchKind.IOTA:
        return log_pi_hat(p) - log_pi_fn(p.y())
    StirlingShift(kind.d).require_point(p)
    return log_pi_hat(p) - log_s(kind.d, p.y())
