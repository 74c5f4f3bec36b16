"""Data behind the comparison figures, as CSV or as a plain SVG line chart

Every figure has a fixed column schema.  Mismatch curves are enclosure
midpoints.  Figures drawn against y = x + alpha show, per y, the largest
(upper-bound figures) or smallest (lower-bound figures) value over the
alpha samples with x = y - alpha >= 0.

A bound that is proved only on part of the abscissa carries that range in
its schema; the SVG draws the conjectured stretch dashed.
"""

import enum
import math
import os
from collections import namedtuple

from traitlets import Float, Instance, Integer, Unicode, default
from traitlets.config import LoggingConfigurable

from . import bounds
from .core import DomainError
from .sg_utils import PositiveFloat, atomic_writing, write_csv
from .verify import GridScanner, GridSpec


class FigureId(enum.Enum):
    IOTA_BOUNDS = "iota-bounds"
    M_HALF = "m-half"
    M_ZERO = "m-zero"
    M_ONE = "m-one"
    M_NEGHALF = "m-neghalf"
    M_TWO = "m-two"
    MHAT_UPPER = "mhat-upper"
    MHAT_LOWER = "mhat-lower"
    MHAT_TWO_SIDED = "mhat-two-sided"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(f.value for f in cls)
            raise DomainError(
                f"unknown figure {name!r}; known figures: {known}"
            ) from None


# (abscissa, mismatch columns, lower bound columns, upper bound columns,
#  (column, abscissa from which that bound is proved) pairs)
FigureSchema = namedtuple(
    "FigureSchema",
    ["abscissa", "curves", "lower", "upper", "proved_from"],
    defaults=[()],
)

# upper_star is proved for x >= 1; every alpha sample has x >= 1 once y >= 2
_STAR_PROVED = (("upper_star", 2.0),)

SCHEMAS = {
    FigureId.IOTA_BOUNDS: FigureSchema(
        "y", ("iota_max_over_alpha",), (), ("upper_8y3", "upper_conj_8y4")
    ),
    FigureId.M_HALF: FigureSchema(
        "x", ("m_half",), ("lower_24x12",), ("upper_24x12sqrt5",)
    ),
    FigureId.M_ZERO: FigureSchema(
        "x", ("m_zero",), ("lower_12x6sqrt2",), ("upper_12x",)
    ),
    FigureId.M_ONE: FigureSchema(
        "x", ("m_one",), ("lower_12x6sqrt10",), ("upper_12x12",)
    ),
    FigureId.M_NEGHALF: FigureSchema(
        "x", ("m_neghalf",), ("lower_general",), ("upper_general",)
    ),
    FigureId.M_TWO: FigureSchema(
        "x", ("m_two",), ("lower_general",), ("upper_general",)
    ),
    FigureId.MHAT_UPPER: FigureSchema(
        "y",
        ("mhat_max_over_alpha",),
        (),
        ("upper_raw", "upper_12y3", "upper_plus", "upper_star"),
        _STAR_PROVED,
    ),
    FigureId.MHAT_LOWER: FigureSchema(
        "y", ("mhat_min_over_alpha",), ("lower_24y12",), ()
    ),
    FigureId.MHAT_TWO_SIDED: FigureSchema(
        "y",
        ("mhat_min_over_alpha", "mhat_max_over_alpha"),
        ("lower_24y12",),
        ("upper_star",),
        _STAR_PROVED,
    ),
}

# figures of m_d: (d, first abscissa, bound pair)
_STIRLING_FIGURES = {
    FigureId.M_HALF: (0.5, 0.0, bounds.stirling_half_bounds),
    FigureId.M_ZERO: (0.0, None, bounds.stirling_zero_bounds),
    FigureId.M_ONE: (1.0, 0.0, bounds.stirling_one_bounds),
    FigureId.M_NEGHALF: (-0.5, 0.5, lambda x: bounds.stirling_general_bounds(-0.5, x)),
    FigureId.M_TWO: (2.0, 0.0, lambda x: bounds.stirling_general_bounds(2.0, x)),
}


class FigureSeries(
    namedtuple("FigureSeries", ["figure_id", "columns", "abscissa", "values"])
):
    """Named curves over a shared, strictly increasing abscissa

    ``values`` holds one tuple per abscissa, in the order of ``columns``.
    """

    __slots__ = ()

    @property
    def schema(self):
        return SCHEMAS[self.figure_id]

    @property
    def header(self):
        return ["abscissa", *self.columns]

    def column(self, name):
        index = self.columns.index(name)
        return [row[index] for row in self.values]

    def conjectured(self, name):
        """Abscissae where the bound in column ``name`` is only conjectured"""
        start = dict(self.schema.proved_from).get(name)
        if start is None:
            return []
        return [a for a in self.abscissa if a < start]

    def inconsistencies(self, tolerance=1e-10):
        """Abscissae where a mismatch curve leaves its bound curves"""
        schema = self.schema
        bad = []
        for a, row in zip(self.abscissa, self.values):
            named = dict(zip(self.columns, row))
            for curve in schema.curves:
                value = named[curve]
                if any(named[b] > value + tolerance for b in schema.lower) or any(
                    named[b] < value - tolerance for b in schema.upper
                ):
                    bad.append(a)
                    break
        return bad

    def to_csv(self, path):
        rows = [[a, *row] for a, row in zip(self.abscissa, self.values)]
        write_csv(path, self.header, rows)

    def to_svg(self, path):
        with atomic_writing(path) as f:
            f.write(render_svg(self))


_COLORS = ("#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
_WIDTH, _HEIGHT = 720, 450
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 190, 20, 50
_DASHED = ' stroke-dasharray="4 3"'


def _ticks(lo, hi, count=5):
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_svg(series):
    """A minimal line chart: axes with ticks, one polyline per column, a legend"""
    xs = series.abscissa
    finite = [v for row in series.values for v in row if math.isfinite(v)]
    x_lo, x_hi = xs[0], xs[-1]
    y_lo, y_hi = min(finite), max(finite)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    plot_w = _WIDTH - _LEFT - _RIGHT
    plot_h = _HEIGHT - _TOP - _BOTTOM

    def px(x):
        return _LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return _TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}"'
        f' viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f"<title>{series.figure_id.value}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
        f'<g stroke="black" stroke-width="1">'
        f'<line x1="{_LEFT}" y1="{_TOP + plot_h}" x2="{_LEFT + plot_w}" y2="{_TOP + plot_h}"/>'
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + plot_h}"/></g>',
        '<g font-family="sans-serif" font-size="11">',
    ]
    for t in _ticks(x_lo, x_hi):
        out.append(
            f'<text x="{px(t):.2f}" y="{_TOP + plot_h + 16}" text-anchor="middle">{t:.4g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        out.append(
            f'<text x="{_LEFT - 6}" y="{py(t) + 4:.2f}" text-anchor="end">{t:.4g}</text>'
        )
    out.append(
        f'<text x="{_LEFT + plot_w / 2:.2f}" y="{_HEIGHT - 12}" text-anchor="middle">'
        f"{series.schema.abscissa}</text>"
    )
    out.append("</g>")

    for i, name in enumerate(series.columns):
        color = _COLORS[i % len(_COLORS)]
        points = [
            f"{px(x):.2f},{py(row[i]):.2f}"
            for x, row in zip(xs, series.values)
            if math.isfinite(row[i])
        ]
        # the conjectured stretch is dashed and shares its last point with the rest
        cut = len(series.conjectured(name))
        if cut:
            out.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
                f'{_DASHED} points="{" ".join(points[: cut + 1])}"/>'
            )
        if points[cut:]:
            out.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
                f' points="{" ".join(points[cut:])}"/>'
            )
        label = name
        if cut:
            start = dict(series.schema.proved_from)[name]
            label = f"{name} (conjectured below {series.schema.abscissa}={start:g})"
        ly = _TOP + 14 + 18 * i
        lx = _WIDTH - _RIGHT + 15
        out.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}"'
            f' stroke-width="2"{_DASHED if cut else ""}/>'
        )
        out.append(
            f'<text x="{lx + 26}" y="{ly + 4}" font-family="sans-serif" font-size="11">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


class FigureBuilder(LoggingConfigurable):
    """Evaluate the mismatch and bound curves of every figure on a fixed grid"""

    out_dir = Unicode(
        "figures", config=True, help="""Directory figures are written to by default."""
    )

    x_max = Float(10.0, config=True, help="""Right end of every figure's abscissa.""")

    x_step = PositiveFloat(
        1.0 / 64.0, config=True, help="""Spacing of the abscissa."""
    )

    alpha_samples = Integer(
        65,
        config=True,
        help="""Alpha samples per abscissa for the figures drawn against x + alpha.""",
    )

    target_width = PositiveFloat(
        1e-10, config=True, help="""Width requested from every enclosure."""
    )

    scanner = Instance(GridScanner)

    @default("scanner")
    def _default_scanner(self):
        return GridScanner(parent=self, target_width=self.target_width)

    def build(self, figure_id):
        if not isinstance(figure_id, FigureId):
            figure_id = FigureId.parse(figure_id)
        if figure_id in _STIRLING_FIGURES:
            series = self._stirling(figure_id)
        else:
            series = self._envelope(figure_id)
        for name, start in series.schema.proved_from:
            if series.conjectured(name):
                self.log.info(
                    "%s: %s is only conjectured for %s < %g",
                    figure_id.value,
                    name,
                    series.schema.abscissa,
                    start,
                )
        bad = series.inconsistencies(self.scanner.tolerance)
        if bad:
            self.log.warning(
                "%s: mismatch leaves its bounds at %i abscissae, first at %s",
                figure_id.value,
                len(bad),
                bad[0],
            )
        return series

    def _stirling(self, figure_id):
        d, x_lo, pair = _STIRLING_FIGURES[figure_id]
        if x_lo is None:
            # m_0 diverges at 0
            x_lo = self.x_step
        elif x_lo > 0:
            # m_{-1/2} lives on x > 1/2 and its upper bound has a pole there
            x_lo += self.x_step
        xs = GridSpec(x_lo, self.x_max, self.x_step, 1, ()).abscissae()
        policy = self.scanner.policy
        self.scanner.fill_m([(d, x) for x in xs], policy)
        rows = []
        for x in xs:
            lower, upper = pair(x)
            rows.append((self.scanner.m(d, x, policy).midpoint(), lower, upper))
        schema = SCHEMAS[figure_id]
        columns = schema.curves + schema.lower + schema.upper
        return FigureSeries(figure_id, columns, tuple(xs), tuple(rows))

    def _envelope(self, figure_id):
        grid = GridSpec(0.0, self.x_max, self.x_step, self.alpha_samples, (), "y")
        points = grid.points()
        scanner = self.scanner
        policy = scanner.policy
        half = policy.halved()
        scanner.fill_iota([p for _, p in points], half)
        if figure_id is FigureId.IOTA_BOUNDS:

            def value(p):
                return scanner.iota(p, half).midpoint()

        else:
            scanner.fill_m([(0.5, p.x + p.alpha) for _, p in points], half)

            def value(p):
                return scanner.mhat(0.5, p, policy).midpoint()

        lowest, highest = {}, {}
        for y, p in points:
            v = value(p)
            lowest[y] = min(v, lowest.get(y, math.inf))
            highest[y] = max(v, highest.get(y, -math.inf))

        ys = sorted(highest)
        rows = [self._envelope_row(figure_id, y, lowest[y], highest[y]) for y in ys]
        schema = SCHEMAS[figure_id]
        columns = schema.curves + schema.lower + schema.upper
        return FigureSeries(figure_id, columns, tuple(ys), tuple(rows))

    @staticmethod
    def _envelope_row(figure_id, y, low, high):
        if figure_id is FigureId.IOTA_BOUNDS:
            return (high, bounds.gautschi_upper(y), bounds.gautschi_upper_conj(y))
        if figure_id is FigureId.MHAT_UPPER:
            return (
                high,
                bounds.sg_upper_raw(y),
                bounds.sg_upper_simple(y),
                bounds.sg_upper_plus(y),
                bounds.sg_upper_star(y),
            )
        if figure_id is FigureId.MHAT_LOWER:
            return (low, bounds.sg_lower(y))
        return (low, high, bounds.sg_lower(y), bounds.sg_upper_star(y))

    def default_path(self, figure_id, fmt="csv"):
        return os.path.join(self.out_dir, f"{FigureId.parse(figure_id).value}.{fmt}")

    def write(self, figure_id, fmt="csv", out=None):
        """Build a figure and write it; returns the path written"""
        if not isinstance(figure_id, FigureId):
            figure_id = FigureId.parse(figure_id)
        if fmt not in ("csv", "svg"):
            raise DomainError(f"figure format must be csv or svg, got {fmt!r}")
        path = out or self.default_path(figure_id.value, fmt)
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        series = self.build(figure_id)
        if fmt == "csv":
            series.to_csv(path)
        else:
            series.to_svg(path)
        self.log.info("Wrote %s", path)
        return path

    def write_all(self, fmt="csv"):
        return [self.write(figure_id, fmt) for figure_id in FigureId]
