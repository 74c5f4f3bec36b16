"""Closed-form bounds for the Gautschi, Stirling and Stirling-Gautschi mismatches

All bounds live on the log scale, as bounds on a mismatch.  The
:class:`BoundId` catalog tags every one-sided bound with its target,
side, domain and provenance, so the grid scanner and the command line can
treat them uniformly.
"""

import enum
import math
from collections import namedtuple
from types import MappingProxyType

from .core import DomainError, Term, rounding_slack
from .reference import HALF_LOG_2PI, MismatchKind

SQRT5_1 = math.sqrt(5.0) - 1.0
SQRT2_1 = math.sqrt(2.0) - 1.0
SQRT10_3 = math.sqrt(10.0) - 3.0
SQRT10_1 = math.sqrt(10.0) - 1.0
EXP_1_12 = math.exp(1.0 / 12.0)
EXP_1_48 = math.exp(1.0 / 48.0)

#: denominators' constants of the two refined Stirling-Gautschi upper bounds
PLUS_CONSTANT = 12.0 - 6.0 * EXP_1_12
STAR_CONSTANT = 18.0 - 12.0 * EXP_1_48


def _require_nonnegative(name, value):
    if not value >= 0:
        raise DomainError(f"{name} must be >= 0, got {name}={value}")


def _require_positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be > 0, got {name}={value}")


def _require_stirling_domain(d, x):
    if not (x >= 0 and x + d > 0):
        raise DomainError(f"x={x} is outside D_d for d={d} (needs x >= 0 and x + d > 0)")


# Gautschi mismatch


def gautschi_lower(y):
    """Best possible lower bound, attained at alpha = 0 and alpha = 1"""
    _require_nonnegative("y", y)
    return 0.0


def gautschi_upper(y):
    _require_nonnegative("y", y)
    return 1.0 / (8.0 * y + 3.0)


def gautschi_upper_conj(y):
    """Conjectured sharpening of :func:`gautschi_upper`"""
    _require_nonnegative("y", y)
    return 1.0 / (8.0 * y + 4.0)


def gautschi_gamma_form(y, s):
    """Bounds on Gamma(y + 1) / Gamma(y + s) for y >= 1, s in [0, 1]"""
    if not y >= 1:
        raise DomainError(f"gautschi_gamma_form requires y >= 1, got y={y}")
    if not 0 <= s <= 1:
        raise DomainError(f"gautschi_gamma_form requires 0 <= s <= 1, got s={s}")
    lower = y ** (1.0 - s)
    return lower, lower * math.exp(1.0 / (8.0 * (y + s) - 5.0))


# Stirling mismatch


def stirling_half_bounds(x):
    """(lower, upper) for m_{1/2}(x)"""
    _require_nonnegative("x", x)
    return -1.0 / (24.0 * x + 12.0), -1.0 / (24.0 * x + 12.0 * SQRT5_1)


def stirling_shift_bounds(d, x):
    """(lower, upper) for the correction integral m_d(x) - m_{1/2}(x)"""
    _require_stirling_domain(d, x)
    q = (d - 0.5) ** 2
    return q / (2.0 * x + max(2.0 * d, 1.0)), q / (2.0 * x + min(2.0 * d, 1.0))


def stirling_general_bounds(d, x):
    """(lower, upper) for m_d(x) for any real shift d"""
    half_lo, half_hi = stirling_half_bounds(x)
    shift_lo, shift_hi = stirling_shift_bounds(d, x)
    return half_lo + shift_lo, half_hi + shift_hi


def stirling_zero_bounds(x, sharpened=False):
    """(lower, upper) for the classical m_0(x); ``sharpened`` needs x >= 1"""
    _require_positive("x", x)
    if sharpened and x < 1:
        raise DomainError(f"the sharpened lower bound needs x >= 1, got x={x}")
    c = SQRT10_3 if sharpened else SQRT2_1
    return 1.0 / (12.0 * x + 6.0 * c), 1.0 / (12.0 * x)


def stirling_one_bounds(x):
    _require_nonnegative("x", x)
    return 1.0 / (12.0 * x + 6.0 * SQRT10_1), 1.0 / (12.0 * x + 12.0)


def robbins_bounds(n):
    """Robbins' classical (lower, upper) for m_0 at positive integers"""
    _require_positive("n", n)
    return 1.0 / (12.0 * n + 1.0), 1.0 / (12.0 * n)


def bbe11_bounds(x):
    """Literature (lower, upper) for m_{1/2}(x), x > 0"""
    _require_positive("x", x)
    return -1.0 / (24.0 * x), -1.0 / (24.0 * x + 24.0 + 3.0 / x)


def mortici_d():
    """The two shifts with (d - 1/2)^2 = 1/12"""
    r = math.sqrt(3.0) / 6.0
    return 0.5 - r, 0.5 + r


# Stirling-Gautschi mismatch, in terms of y = x + alpha


def sg_lower(y):
    _require_nonnegative("y", y)
    return -1.0 / (24.0 * y + 12.0)


def sg_upper_raw(y):
    """Gautschi upper bound plus the upper bound on m_{1/2}"""
    _require_nonnegative("y", y)
    return 1.0 / (8.0 * y + 3.0) - 1.0 / (24.0 * y + 12.0 * SQRT5_1)


def sg_upper_simple(y):
    _require_nonnegative("y", y)
    return 1.0 / (12.0 * y + 3.0)


def sg_alpha_x(x):
    _require_nonnegative("x", x)
    return (x + 1.0) * math.exp(1.0 / (12.0 * (x + 1.0) ** 2)) - (x + 0.5)


def sg_beta_x(x):
    return 0.5 * (0.5 + sg_alpha_x(x))


def sg_k(x):
    """K_x = 12 - 6((x + 1) exp(1/(12 (x + 1)^2)) - x), increasing in x"""
    _require_nonnegative("x", x)
    return 12.0 - 6.0 * ((x + 1.0) * math.exp(1.0 / (12.0 * (x + 1.0) ** 2)) - x)


def sg_k_bound(x, alpha):
    """Upper bound 1/(12(x + alpha) + K_x)"""
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got alpha={alpha}")
    return 1.0 / (12.0 * (x + alpha) + sg_k(x))


def sg_upper_plus(y):
    _require_nonnegative("y", y)
    return 1.0 / (12.0 * y + PLUS_CONSTANT)


def sg_upper_star(y):
    """Proved where x >= 1; conjectured for smaller x"""
    _require_nonnegative("y", y)
    return 1.0 / (12.0 * y + STAR_CONSTANT)


def sg_nonasymptotic():
    """Constant (lower, upper) for m_hat_{1/2} on its whole domain"""
    return 0.5 - 0.5 * math.log(math.pi), 1.0 - HALF_LOG_2PI


FactorialHatBounds = namedtuple("FactorialHatBounds", ["asymptotic", "constant"])


def factorial_hat_bounds(x):
    """Both log-scale brackets for the interpolated factorial at x"""
    _require_nonnegative("x", x)
    base = (x + 0.5) * (math.log(x + 0.5) - 1.0)
    log_s_half = HALF_LOG_2PI + base
    return FactorialHatBounds(
        asymptotic=(log_s_half + sg_lower(x), log_s_half + sg_upper_plus(x)),
        constant=(0.5 + 0.5 * math.log(2.0) + base, 1.0 + base),
    )


# Catalog


class Side(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


class Provenance(enum.Enum):
    PROVED = "proved"
    CONJECTURED = "conjectured"
    LITERATURE = "literature"


BoundInfo = namedtuple(
    "BoundInfo",
    [
        "family",
        "d",
        "side",
        "formula",
        "domain",
        "provenance",
        "source",
        "evaluate",
        "admits",
    ],
)
BoundInfo.__doc__ = """Catalog entry of a one-sided bound

``d`` is None when the shift comes from the scan grid.  ``evaluate`` and
``admits`` take (x, alpha, d); ``evaluate`` returns a :class:`Term`.
"""


class BoundId(enum.Enum):
    GAUTSCHI_LOWER = "gautschi_lower"
    GAUTSCHI_UPPER = "gautschi_upper"
    GAUTSCHI_UPPER_CONJ = "gautschi_upper_conj"
    STIRLING_HALF_LOWER = "stirling_half_lower"
    STIRLING_HALF_UPPER = "stirling_half_upper"
    STIRLING_GENERAL_LOWER = "stirling_general_lower"
    STIRLING_GENERAL_UPPER = "stirling_general_upper"
    STIRLING_ZERO_LOWER = "stirling_zero_lower"
    STIRLING_ZERO_SHARP_LOWER = "stirling_zero_sharp_lower"
    STIRLING_ZERO_UPPER = "stirling_zero_upper"
    STIRLING_ONE_LOWER = "stirling_one_lower"
    STIRLING_ONE_UPPER = "stirling_one_upper"
    ROBBINS_LOWER = "robbins_lower"
    ROBBINS_UPPER = "robbins_upper"
    BBE11_LOWER = "bbe11_lower"
    BBE11_UPPER = "bbe11_upper"
    SG_LOWER = "sg_lower"
    SG_UPPER_RAW = "sg_upper_raw"
    SG_UPPER_SIMPLE = "sg_upper_simple"
    SG_UPPER_K = "sg_upper_k"
    SG_UPPER_PLUS = "sg_upper_plus"
    SG_UPPER_STAR = "sg_upper_star"
    SG_UPPER_STAR_CONJ = "sg_upper_star_conj"
    SG_NONASYMPTOTIC_LOWER = "sg_nonasymptotic_lower"
    SG_NONASYMPTOTIC_UPPER = "sg_nonasymptotic_upper"

    @property
    def info(self):
        return CATALOG[self]

    @property
    def side(self):
        return self.info.side

    @property
    def provenance(self):
        return self.info.provenance

    @property
    def proved(self):
        return self.info.provenance is Provenance.PROVED

    def target(self, d=None):
        info = self.info
        if info.family == MismatchKind.IOTA:
            return MismatchKind.iota()
        shift = info.d if info.d is not None else d
        if shift is None:
            raise DomainError(f"{self.value} needs a shift d")
        return MismatchKind(info.family, shift)

    def admits(self, x, alpha=0.0, d=None):
        return self.target(d).contains(x, alpha) and self.info.admits(x, alpha, d)

    def evaluate(self, x, alpha=0.0, d=None):
        """Bound value at (x, alpha) as a :class:`Term` carrying its rounding slack"""
        if not self.admits(x, alpha, d):
            raise DomainError(
                f"({x}, {alpha}) is outside the domain of {self.value}: {self.info.domain}"
            )
        return self.info.evaluate(x, alpha, d)

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            raise DomainError(f"unknown bound {name!r}") from None


def _term(value, ops, *parts):
    return Term(value, rounding_slack(*(parts or (value,)), ops=ops))


def _general(index):
    def evaluate(x, alpha, d):
        half = stirling_half_bounds(x)[index]
        shift = stirling_shift_bounds(d, x)[index]
        return _term(half + shift, 8, half, shift, half + shift)

    return evaluate


def _raw(x, alpha, d):
    y = x + alpha
    a = 1.0 / (8.0 * y + 3.0)
    b = 1.0 / (24.0 * y + 12.0 * SQRT5_1)
    return _term(a - b, 5, a, b)


def _y_bound(function, ops=4):
    return lambda x, alpha, d: _term(function(x + alpha), ops)


def _x_bound(function, index, ops=4, **kwargs):
    return lambda x, alpha, d: _term(function(x, **kwargs)[index], ops)


def _always(x, alpha, d):
    return True


def _is_integer(x, alpha, d):
    return x >= 1 and x == math.floor(x)


_NONASYMPTOTIC = sg_nonasymptotic()
_POINT_DOMAIN = "x >= 0, 0 <= alpha <= 1"


def _zero(x, alpha, d):
    return Term(0.0, 0.0)


def _k_bound(x, alpha, d):
    return _term(sg_k_bound(x, alpha), 10)


def _nonasymptotic(index):
    return lambda x, alpha, d: _term(_NONASYMPTOTIC[index], 3)


def _at_least_one(x, alpha, d):
    return x >= 1


def _below_one(x, alpha, d):
    return x < 1


def _positive(x, alpha, d):
    return x > 0


_IOTA, _M, _MHAT = MismatchKind.IOTA, MismatchKind.M, MismatchKind.MHAT

CATALOG = MappingProxyType(
    {
        BoundId.GAUTSCHI_LOWER: BoundInfo(
            family=_IOTA,
            d=None,
            side=Side.LOWER,
            formula="0",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="Gautschi lower bound, attained at alpha in {0, 1}",
            evaluate=_zero,
            admits=_always,
        ),
        BoundId.GAUTSCHI_UPPER: BoundInfo(
            family=_IOTA,
            d=None,
            side=Side.UPPER,
            formula="1/(8y+3)",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="Gautschi-type upper bound from the integral identity",
            evaluate=_y_bound(gautschi_upper),
            admits=_always,
        ),
        BoundId.GAUTSCHI_UPPER_CONJ: BoundInfo(
            family=_IOTA,
            d=None,
            side=Side.UPPER,
            formula="1/(8y+4)",
            domain=_POINT_DOMAIN,
            provenance=Provenance.CONJECTURED,
            source="conjectured sharp Gautschi-type upper bound",
            evaluate=_y_bound(gautschi_upper_conj),
            admits=_always,
        ),
        BoundId.STIRLING_HALF_LOWER: BoundInfo(
            family=_M,
            d=0.5,
            side=Side.LOWER,
            formula="-1/(24x+12)",
            domain="x >= 0",
            provenance=Provenance.PROVED,
            source="Burnside-form Stirling lower bound",
            evaluate=_x_bound(stirling_half_bounds, 0),
            admits=_always,
        ),
        BoundId.STIRLING_HALF_UPPER: BoundInfo(
            family=_M,
            d=0.5,
            side=Side.UPPER,
            formula="-1/(24x+12(sqrt(5)-1))",
            domain="x >= 0",
            provenance=Provenance.PROVED,
            source="Burnside-form Stirling upper bound",
            evaluate=_x_bound(stirling_half_bounds, 1),
            admits=_always,
        ),
        BoundId.STIRLING_GENERAL_LOWER: BoundInfo(
            family=_M,
            d=None,
            side=Side.LOWER,
            formula="-1/(24x+12) + (d-1/2)^2/(2x+max(2d,1))",
            domain="x >= 0, x + d > 0",
            provenance=Provenance.PROVED,
            source="two-sided Stirling bounds for any shift d",
            evaluate=_general(0),
            admits=_always,
        ),
        BoundId.STIRLING_GENERAL_UPPER: BoundInfo(
            family=_M,
            d=None,
            side=Side.UPPER,
            formula="-1/(24x+12(sqrt(5)-1)) + (d-1/2)^2/(2x+min(2d,1))",
            domain="x >= 0, x + d > 0",
            provenance=Provenance.PROVED,
            source="two-sided Stirling bounds for any shift d",
            evaluate=_general(1),
            admits=_always,
        ),
        BoundId.STIRLING_ZERO_LOWER: BoundInfo(
            family=_M,
            d=0.0,
            side=Side.LOWER,
            formula="1/(12x+6(sqrt(2)-1))",
            domain="x > 0",
            provenance=Provenance.PROVED,
            source="classical Stirling lower bound",
            evaluate=_x_bound(stirling_zero_bounds, 0),
            admits=_always,
        ),
        BoundId.STIRLING_ZERO_SHARP_LOWER: BoundInfo(
            family=_M,
            d=0.0,
            side=Side.LOWER,
            formula="1/(12x+6(sqrt(10)-3))",
            domain="x >= 1",
            provenance=Provenance.PROVED,
            source="classical Stirling lower bound, sharpened for x >= 1",
            evaluate=_x_bound(stirling_zero_bounds, 0, sharpened=True),
            admits=_at_least_one,
        ),
        BoundId.STIRLING_ZERO_UPPER: BoundInfo(
            family=_M,
            d=0.0,
            side=Side.UPPER,
            formula="1/(12x)",
            domain="x > 0",
            provenance=Provenance.PROVED,
            source="classical Stirling upper bound",
            evaluate=_x_bound(stirling_zero_bounds, 1),
            admits=_always,
        ),
        BoundId.STIRLING_ONE_LOWER: BoundInfo(
            family=_M,
            d=1.0,
            side=Side.LOWER,
            formula="1/(12x+6(sqrt(10)-1))",
            domain="x >= 0",
            provenance=Provenance.PROVED,
            source="Stirling lower bound for the shift d = 1",
            evaluate=_x_bound(stirling_one_bounds, 0),
            admits=_always,
        ),
        BoundId.STIRLING_ONE_UPPER: BoundInfo(
            family=_M,
            d=1.0,
            side=Side.UPPER,
            formula="1/(12x+12)",
            domain="x >= 0",
            provenance=Provenance.PROVED,
            source="Stirling upper bound for the shift d = 1",
            evaluate=_x_bound(stirling_one_bounds, 1),
            admits=_always,
        ),
        BoundId.ROBBINS_LOWER: BoundInfo(
            family=_M,
            d=0.0,
            side=Side.LOWER,
            formula="1/(12n+1)",
            domain="positive integers n",
            provenance=Provenance.LITERATURE,
            source="Robbins (1955), proved at positive integers only",
            evaluate=_x_bound(robbins_bounds, 0),
            admits=_is_integer,
        ),
        BoundId.ROBBINS_UPPER: BoundInfo(
            family=_M,
            d=0.0,
            side=Side.UPPER,
            formula="1/(12n)",
            domain="positive integers n",
            provenance=Provenance.LITERATURE,
            source="Robbins (1955), proved at positive integers only",
            evaluate=_x_bound(robbins_bounds, 1),
            admits=_is_integer,
        ),
        BoundId.BBE11_LOWER: BoundInfo(
            family=_M,
            d=0.5,
            side=Side.LOWER,
            formula="-1/(24x)",
            domain="x > 0",
            provenance=Provenance.LITERATURE,
            source="BBE11 comparison bound",
            evaluate=_x_bound(bbe11_bounds, 0),
            admits=_positive,
        ),
        BoundId.BBE11_UPPER: BoundInfo(
            family=_M,
            d=0.5,
            side=Side.UPPER,
            formula="-1/(24x+24+3/x)",
            domain="x > 0",
            provenance=Provenance.LITERATURE,
            source="BBE11 comparison bound",
            evaluate=_x_bound(bbe11_bounds, 1, ops=6),
            admits=_positive,
        ),
        BoundId.SG_LOWER: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.LOWER,
            formula="-1/(24y+12)",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="Burnside-type Stirling-Gautschi lower bound",
            evaluate=_y_bound(sg_lower),
            admits=_always,
        ),
        BoundId.SG_UPPER_RAW: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(8y+3) - 1/(24y+12(sqrt(5)-1))",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="sum of the Gautschi and Burnside-form upper bounds",
            evaluate=_raw,
            admits=_always,
        ),
        BoundId.SG_UPPER_SIMPLE: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(12y+3)",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="simplified Stirling-Gautschi upper bound",
            evaluate=_y_bound(sg_upper_simple),
            admits=_always,
        ),
        BoundId.SG_UPPER_K: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(12y+K_x)",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="Stirling-Gautschi upper bound with the increasing constant K_x",
            evaluate=_k_bound,
            admits=_always,
        ),
        BoundId.SG_UPPER_PLUS: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(12y+12-6e^(1/12))",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="Stirling-Gautschi upper bound, K_x taken at x = 0",
            evaluate=_y_bound(sg_upper_plus),
            admits=_always,
        ),
        BoundId.SG_UPPER_STAR: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(12y+18-12e^(1/48))",
            domain="x >= 1, 0 <= alpha <= 1",
            provenance=Provenance.PROVED,
            source="Stirling-Gautschi upper bound, K_x taken at x = 1",
            evaluate=_y_bound(sg_upper_star),
            admits=_at_least_one,
        ),
        BoundId.SG_UPPER_STAR_CONJ: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1/(12y+18-12e^(1/48))",
            domain="0 <= x < 1, 0 <= alpha <= 1",
            provenance=Provenance.CONJECTURED,
            source="conjectured extension of the K_1 bound to x < 1",
            evaluate=_y_bound(sg_upper_star),
            admits=_below_one,
        ),
        BoundId.SG_NONASYMPTOTIC_LOWER: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.LOWER,
            formula="1/2 - log(pi)/2",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="constant lower bound, attained at (0, 0)",
            evaluate=_nonasymptotic(0),
            admits=_always,
        ),
        BoundId.SG_NONASYMPTOTIC_UPPER: BoundInfo(
            family=_MHAT,
            d=0.5,
            side=Side.UPPER,
            formula="1 - log(2 pi)/2",
            domain=_POINT_DOMAIN,
            provenance=Provenance.PROVED,
            source="constant upper bound, attained at (0, 1/2)",
            evaluate=_nonasymptotic(1),
            admits=_always,
        ),
    }
)


def proved_bounds():
    return [bound for bound in BoundId if bound.proved]


def bound_table():
    """The catalog as plain rows, in declaration order"""
    rows = []
    for bound in BoundId:
        info = bound.info
        if info.family == MismatchKind.IOTA or info.d is not None:
            target = str(bound.target())
        else:
            target = "M(d)" if info.family == MismatchKind.M else "MHat(d)"
        rows.append(
            {
                "name": bound.value,
                "target": target,
                "side": info.side.value,
                "formula": info.formula,
                "domain": info.domain,
                "provenance": info.provenance.value,
                "source": info.source,
            }
        )
    return rows


def evaluate(bound, x, alpha=0.0, d=None):
    """Evaluate a catalog bound given by member or by name"""
    if not isinstance(bound, BoundId):
        bound = BoundId.parse(bound)
    return bound.evaluate(x, alpha, d)
