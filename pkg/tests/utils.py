"""mpmath oracles for the mismatch functions, evaluated at 50 digits"""

import mpmath

mpmath.mp.dps = 50

HALF = mpmath.mpf(1) / 2


def log_pi(x):
    return mpmath.loggamma(mpmath.mpf(x) + 1)


def log_s(d, x):
    x = mpmath.mpf(x)
    d = mpmath.mpf(d)
    return mpmath.log(2 * mpmath.pi) / 2 - d + (x + HALF) * mpmath.log(x + d) - x


def iota(x, alpha):
    x = mpmath.mpf(x)
    alpha = mpmath.mpf(alpha)
    return log_pi(x) + alpha * mpmath.log(x + 1) - log_pi(x + alpha)


def m(d, x):
    return log_pi(x) - log_s(d, x)


def mhat(d, x, alpha):
    """m_hat_d at (x, alpha), with x + alpha formed exactly"""
    return iota(x, alpha) + m(d, mpmath.mpf(x) + mpmath.mpf(alpha))


def encloses(enclosure, value, slack=0.0):
    """True when the mpmath value lies in the enclosure widened by slack"""
    return (
        mpmath.mpf(enclosure.lo) - slack <= value <= mpmath.mpf(enclosure.hi) + slack
    )
