"""Grid scanners that certify inequalities with enclosures

A scan evaluates a certified enclosure of the target mismatch and the
bound value at every grid point and classifies the margin (bound minus
mismatch for upper bounds, mismatch minus bound for lower bounds):

- violated: the whole margin interval is negative;
- satisfied: the margin is at least ``-tolerance`` and the enclosure met
  its width;
- indeterminate: anything else.  Indeterminate points are evaluated once
  more at a hundredth of the width before they are reported.

Scans of conjectured bounds are evidence, not proof, and are labeled so.
"""

import enum
import math
import os
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from traitlets import Any, Float, Integer, List, default
from traitlets.config import LoggingConfigurable

from . import bounds, identities
from .bounds import BoundId, Provenance, Side
from .core import DomainError, Enclosure, InterpPoint, frac
from .identities import TailPolicy
from .reference import MismatchKind
from .sg_utils import PositiveFloat, format_float, persist_summary, write_csv

DEFAULT_TOLERANCE = 1e-10
DEFAULT_D_LIST = (-0.5, 0.0, 0.5, 1.0, 2.0)

SATISFIED = "satisfied"
INDETERMINATE = "indeterminate"
VIOLATED = "violated"

#: ulps of the larger side within which a proof-step margin counts as zero
PROOFSTEP_ULPS = 8


class GridSpec(
    namedtuple(
        "GridSpec", ["x_lo", "x_hi", "x_step", "alpha_samples", "d_list", "over"]
    )
):
    """A rectangular scan grid

    The abscissa runs from ``x_lo`` to ``x_hi`` (inclusive, up to rounding)
    in steps of ``x_step``.  With ``over="y"`` the abscissa is y = x + alpha
    and only the points with x = y - alpha >= 0 are kept.  ``alpha_samples``
    equally spaced values cover [0, 1] including both ends; a single sample
    means alpha = 0 only.  ``d_list`` supplies the shifts for bounds whose
    target family is not tied to one d.
    """

    __slots__ = ()

    def __new__(
        cls,
        x_lo=0.0,
        x_hi=10.0,
        x_step=1.0 / 64.0,
        alpha_samples=65,
        d_list=DEFAULT_D_LIST,
        over="x",
    ):
        x_lo, x_hi, x_step = float(x_lo), float(x_hi), float(x_step)
        if not (math.isfinite(x_lo) and math.isfinite(x_hi)):
            raise DomainError(f"grid range must be finite, got [{x_lo}, {x_hi}]")
        if x_lo < 0:
            raise DomainError(f"grid requires x_lo >= 0, got x_lo={x_lo}")
        if x_hi < x_lo:
            raise DomainError(f"grid requires x_lo <= x_hi, got [{x_lo}, {x_hi}]")
        if not (math.isfinite(x_step) and x_step > 0):
            raise DomainError(f"grid requires step > 0, got step={x_step}")
        if int(alpha_samples) < 1:
            raise DomainError(
                f"grid requires at least one alpha sample, got {alpha_samples}"
            )
        if over not in ("x", "y"):
            raise DomainError(f"grid abscissa must be 'x' or 'y', got {over!r}")
        d_list = tuple(float(d) for d in d_list)
        return super().__new__(
            cls, x_lo, x_hi, x_step, int(alpha_samples), d_list, over
        )

    def replace(self, **changes):
        """A validated copy with some fields changed"""
        return GridSpec(**{**self._asdict(), **changes})

    def abscissae(self):
        n = int(math.floor((self.x_hi - self.x_lo) / self.x_step + 1e-9)) + 1
        return [self.x_lo + i * self.x_step for i in range(n)]

    def alphas(self):
        if self.alpha_samples == 1:
            return [0.0]
        last = self.alpha_samples - 1
        return [j / last for j in range(self.alpha_samples)]

    def points(self):
        """(abscissa, InterpPoint) pairs in scan order"""
        points = []
        for a in self.abscissae():
            for alpha in self.alphas():
                x = a if self.over == "x" else a - alpha
                if x >= 0:
                    points.append((a, InterpPoint(x, alpha)))
        return points

    def describe(self):
        text = (
            f"{self.over} in [{self.x_lo:g}, {self.x_hi:g}] step {self.x_step:g},"
            f" {self.alpha_samples} alpha samples"
        )
        if self.d_list:
            text += ", d in {" + ", ".join(f"{d:g}" for d in self.d_list) + "}"
        return text

    def to_dict(self):
        return {
            "x_lo": self.x_lo,
            "x_hi": self.x_hi,
            "x_step": self.x_step,
            "alpha_samples": self.alpha_samples,
            "d_list": list(self.d_list),
            "over": self.over,
        }


ScanPoint = namedtuple("ScanPoint", ["x", "alpha", "d", "t"], defaults=(None, None))

MarginRecord = namedtuple(
    "MarginRecord",
    ["point", "abscissa", "target", "bound", "margin", "status", "touching"],
)


def _point_key(point):
    return tuple(-math.inf if v is None else v for v in point)


def _record_key(record):
    return (record.margin.lo, _point_key(record.point))


def classify(margin, tolerance, width_met=True):
    """Status of a margin enclosure"""
    if margin.hi < 0:
        return VIOLATED
    if width_met and margin.lo >= -tolerance:
        return SATISFIED
    return INDETERMINATE


def _touching(margin, tolerance):
    return margin.lo <= tolerance and margin.hi >= -tolerance


class Conjecture(enum.Enum):
    ONE = "conjecture1"
    TWO = "conjecture2"

    @property
    def bound(self):
        if self is Conjecture.ONE:
            return BoundId.GAUTSCHI_UPPER_CONJ
        return BoundId.SG_UPPER_STAR_CONJ

    def default_grid(self, alpha_samples=65):
        if self is Conjecture.ONE:
            return GridSpec(0.0, 20.0, 1.0 / 128.0, alpha_samples, (), "y")
        return GridSpec(0.0, 1.0 - 1.0 / 256.0, 1.0 / 256.0, alpha_samples, ())


class ProofStep(enum.Enum):
    """Closed-form inequalities used inside the proofs of the bounds"""

    GAUTSCHI_AUXILIARY = "gautschi_auxiliary"
    STIRLING_HALF = "stirling_half"
    STIRLING_ZERO = "stirling_zero"
    STIRLING_ZERO_STRENGTHENED = "stirling_zero_strengthened"

    @property
    def domain_min(self):
        return {
            ProofStep.GAUTSCHI_AUXILIARY: 1.0,
            ProofStep.STIRLING_HALF: 1.0,
            ProofStep.STIRLING_ZERO: 0.5,
            ProofStep.STIRLING_ZERO_STRENGTHENED: 1.5,
        }[self]

    @property
    def shift(self):
        """The constant c of (y + c - 1/2)(y + c + 1/2) >= y^2 - t^2"""
        return {
            ProofStep.STIRLING_HALF: 0.5 * (math.sqrt(5.0) - 2.0),
            ProofStep.STIRLING_ZERO: 0.5 * bounds.SQRT2_1,
            ProofStep.STIRLING_ZERO_STRENGTHENED: 0.5 * bounds.SQRT10_3,
        }.get(self)

    def default_grid(self, alpha_samples=65, x_hi=20.0):
        return GridSpec(self.domain_min, x_hi, 1.0 / 128.0, alpha_samples, ())

    def margins(self, z, samples):
        """Margins right - left over the inner mesh at abscissa z

        Returns (margins, tolerances, inner) where ``inner`` holds the
        (alpha, t) pairs of the mesh in row-major order.
        """
        if self is ProofStep.GAUTSCHI_AUXILIARY:
            alpha = np.linspace(0.0, 1.0, samples)[:, None]
            t = np.linspace(0.0, 1.0, samples)[None, :]
            y = z + alpha
            a = alpha * (1.0 - alpha)
            left = a / ((y + alpha * (t - 1.0)) * (y + (1.0 - alpha) * (1.0 - t)))
            right = 0.25 / ((y - 0.625) * (y + 0.375))
            left, right = np.broadcast_arrays(left, right)
            margin = right - left
            tol = PROOFSTEP_ULPS * np.spacing(np.maximum(np.abs(left), np.abs(right)))
            inner = np.broadcast_arrays(alpha, t)
            return margin.ravel(), tol.ravel(), (inner[0].ravel(), inner[1].ravel())

        c = self.shift
        t = np.linspace(0.0, 0.5, samples)
        left = np.full_like(t, (z - 0.5) * (z + 0.5))
        middle = z * z - t * t
        right = np.full_like(t, (z + c - 0.5) * (z + c + 0.5))
        lower_margin = middle - left
        upper_margin = right - middle
        scale = np.maximum(np.abs(middle), np.maximum(np.abs(left), np.abs(right)))
        tol = PROOFSTEP_ULPS * np.spacing(scale)
        margin = np.minimum(lower_margin, upper_margin)
        return margin, tol, (np.full_like(t, np.nan), t)


class ScanReport:
    """Outcome of scanning one inequality over a grid

    Besides the counts, the report keeps the smallest margin found at each
    abscissa; that profile is what :meth:`write_csv` emits.
    """

    def __init__(self, bound, grid, tolerance=DEFAULT_TOLERANCE, evidence=False):
        self.bound = bound
        self.grid = grid
        self.tolerance = tolerance
        self.evidence = evidence
        self.points_checked = 0
        self.refined = 0
        self.touching = 0
        self.violations = []
        self.indeterminate = []
        self.profile = {}
        self._min = None

    @property
    def name(self):
        return self.bound.value

    @property
    def min_margin(self):
        return self._min.margin.lo if self._min else math.inf

    @property
    def argmin(self):
        return self._min.point if self._min else None

    @property
    def ok(self):
        return not self.violations

    @property
    def certified(self):
        """No violation and no point left undecided after refinement"""
        return not self.violations and not self.indeterminate

    def _note(self, record):
        if self._min is None or _record_key(record) < _record_key(self._min):
            self._min = record
        best = self.profile.get(record.abscissa)
        if best is None or _record_key(record) < _record_key(best):
            self.profile[record.abscissa] = record

    def add(self, record):
        self.points_checked += 1
        self._note(record)
        if record.touching:
            self.touching += 1
        if record.status == VIOLATED:
            self.violations.append((record.point, record.margin))
        elif record.status == INDETERMINATE:
            self.indeterminate.append((record.point, record.margin))

    def add_block(self, minimum, size, violations=(), touching=0):
        """Account for ``size`` points of which only some are itemized

        ``minimum`` is the record with the smallest margin in the block and
        ``violations`` lists every violated record.
        """
        self.points_checked += size
        self.touching += touching
        self._note(minimum)
        self.violations.extend((r.point, r.margin) for r in violations)

    def summary(self):
        lines = [
            f"{self.name}: {self.points_checked} points, {len(self.violations)} violations,"
            f" {len(self.indeterminate)} indeterminate ({self.refined} refined),"
            f" {self.touching} touching",
            f"  grid: {self.grid.describe()}",
        ]
        if self._min is not None:
            lines.append(
                f"  min margin {self.min_margin:.6e} at {_format_point(self.argmin)}"
            )
        for point, margin in self.violations[:10]:
            lines.append(f"  VIOLATED at {_format_point(point)}: margin {margin!r}")
        if self.evidence:
            lines.append("  EVIDENCE: numerical scan of a conjecture, not a proof")
        return "\n".join(lines)

    def summary_dict(self):
        summary = {
            "bound": self.name,
            "grid": self.grid.to_dict(),
            "tolerance": self.tolerance,
            "points_checked": self.points_checked,
            "violations": len(self.violations),
            "indeterminate": len(self.indeterminate),
            "refined": self.refined,
            "touching": self.touching,
            "evidence": self.evidence,
        }
        if self._min is not None:
            summary["min_margin"] = self.min_margin
            summary["argmin"] = _point_dict(self.argmin)
        if self.violations:
            summary["violated_points"] = [
                dict(_point_dict(p), margin_lo=m.lo, margin_hi=m.hi)
                for p, m in self.violations
            ]
        return summary

    header = [
        "abscissa",
        "x",
        "alpha",
        "d",
        "t",
        "target_lo",
        "target_hi",
        "bound",
        "margin_lo",
        "margin_hi",
        "status",
    ]

    def to_rows(self):
        rows = []
        for abscissa in sorted(self.profile):
            r = self.profile[abscissa]
            target = r.target
            rows.append(
                [
                    abscissa,
                    *("" if v is None else float(v) for v in r.point),
                    "" if target is None else target.lo,
                    "" if target is None else target.hi,
                    "" if r.bound is None else r.bound,
                    r.margin.lo,
                    r.margin.hi,
                    r.status,
                ]
            )
        return rows

    def write_csv(self, path):
        write_csv(path, self.header, self.to_rows())

    def persist(self, csv_path):
        """Write the CSV profile and a TOML summary next to it"""
        self.write_csv(csv_path)
        summary_path = os.path.splitext(csv_path)[0] + ".toml"
        persist_summary(summary_path, self.summary_dict())
        return summary_path


def _format_point(point):
    return ", ".join(
        f"{name}={format_float(v)}"
        for name, v in zip(point._fields, point)
        if v is not None and not (isinstance(v, float) and math.isnan(v))
    )


def _point_dict(point):
    return {
        name: v
        for name, v in zip(point._fields, point)
        if v is not None and not (isinstance(v, float) and math.isnan(v))
    }


def merge_reports(reports):
    """Combine reports of the same inequality over disjoint parts of a grid"""
    reports = list(reports)
    if not reports:
        raise DomainError("merge_reports needs at least one report")
    first = reports[0]
    merged = ScanReport(first.bound, first.grid, first.tolerance, first.evidence)
    for report in reports:
        if report.bound is not first.bound:
            raise DomainError(
                f"cannot merge reports of {report.name} and {first.name}"
            )
        merged.points_checked += report.points_checked
        merged.refined += report.refined
        merged.touching += report.touching
        merged.violations.extend(report.violations)
        merged.indeterminate.extend(report.indeterminate)
        for record in report.profile.values():
            merged._note(record)
    merged.violations.sort(key=lambda v: _point_key(v[0]))
    merged.indeterminate.sort(key=lambda v: _point_key(v[0]))
    return merged


AsymptoticsRow = namedtuple("AsymptoticsRow", ["x", "values"])


class AsymptoticsTable(namedtuple("AsymptoticsTable", ["header", "rows"])):
    """Magnitudes of the mismatches along increasing x

    Each value is the largest magnitude within the certified enclosure.
    """

    __slots__ = ()

    def column(self, name):
        index = self.header.index(name) - 1
        return [row.values[index] for row in self.rows]

    def decays(self):
        """Column names whose magnitudes do not decrease strictly along x"""
        failing = []
        for name in self.header[1:]:
            values = self.column(name)
            if any(b >= a for a, b in zip(values, values[1:])):
                failing.append(name)
        return failing

    def to_rows(self):
        return [[row.x, *row.values] for row in self.rows]


class ConcavityCheck(
    namedtuple(
        "ConcavityCheck",
        ["x", "concave", "argmax_alpha", "argmin_alpha", "largest_second_difference"],
    )
):
    __slots__ = ()

    @property
    def ok(self):
        return self.concave and self.argmax_alpha == 0.5 and self.argmin_alpha == 0.0


WidthComparison = namedtuple(
    "WidthComparison", ["x", "bbe11_width", "half_width", "ratio"]
)


def _magnitude(enclosure):
    return max(abs(enclosure.lo), abs(enclosure.hi))


class GridScanner(LoggingConfigurable):
    """Scan the bound catalog, the conjectures and the proof steps over grids"""

    tolerance = Float(
        config=True,
        help="""Margins down to -tolerance count as satisfied.

        Defaults to 1e-10, or to the value of the SG_TOL environment variable.
        """,
    )

    @default("tolerance")
    def _default_tolerance(self):
        env = os.environ.get("SG_TOL")
        if env:
            self.log.info("Using tolerance %s from SG_TOL", env)
            return float(env)
        return DEFAULT_TOLERANCE

    target_width = PositiveFloat(
        1e-10, config=True, help="""Width requested from every enclosure."""
    )

    max_periods = Integer(
        10 ** 6, config=True, help="""Cap on the periods summed per enclosure."""
    )

    refine_factor = PositiveFloat(
        100.0,
        config=True,
        help="""Indeterminate points are retried at target_width / refine_factor.""",
    )

    x_max = Float(10.0, config=True, help="""Upper end of the default x range.""")

    x_step = PositiveFloat(
        1.0 / 64.0, config=True, help="""Step of the default x grid."""
    )

    alpha_samples = Integer(
        65, config=True, help="""Number of alpha samples in [0, 1], ends included."""
    )

    d_list = List(
        Float(),
        default_value=list(DEFAULT_D_LIST),
        config=True,
        help="""Shifts d scanned for bounds that hold for every d.""",
    )

    workers = Integer(
        config=True, help="""Threads used to evaluate enclosures."""
    )

    @default("workers")
    def _default_workers(self):
        return min(4, os.cpu_count() or 1)

    executor = Any()

    @default("executor")
    def _default_executor(self):
        return ThreadPoolExecutor(max(1, self.workers))

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self._iota_cache = {}
        self._m_cache = {}

    @property
    def policy(self):
        return TailPolicy(self.target_width, self.max_periods)

    def default_grid(self, bound):
        """The grid each bound is scanned on when none is given"""
        if bound is BoundId.GAUTSCHI_UPPER_CONJ:
            return Conjecture.ONE.default_grid(self.alpha_samples)
        if bound is BoundId.SG_UPPER_STAR_CONJ:
            return Conjecture.TWO.default_grid(self.alpha_samples)

        x_lo, step = 0.0, self.x_step
        if bound in (BoundId.ROBBINS_LOWER, BoundId.ROBBINS_UPPER):
            x_lo, step = 1.0, 1.0
        elif bound in (BoundId.STIRLING_ZERO_SHARP_LOWER, BoundId.SG_UPPER_STAR):
            x_lo = 1.0
        elif bound in (
            BoundId.STIRLING_ZERO_LOWER,
            BoundId.STIRLING_ZERO_UPPER,
            BoundId.BBE11_LOWER,
            BoundId.BBE11_UPPER,
        ):
            # m_0 diverges at 0 and the BBE11 pair divides by x
            x_lo = step
        samples = 1 if bound.info.family == MismatchKind.M else self.alpha_samples
        return GridSpec(x_lo, self.x_max, step, samples, self.d_list)

    # enclosures

    def _ladder(self, job):
        alpha, xs, policy = job
        x0 = xs[0]
        rungs, stray = {}, []
        for x in xs:
            j = x - x0
            if j == math.floor(j) and x0 + j == x:
                rungs[int(j)] = x
            else:
                stray.append(x)
        ladder = identities.iota_ladder(x0, alpha, max(rungs) + 1, policy)
        found = {(x, alpha): ladder[j] for j, x in rungs.items()}
        for x in stray:
            found[(x, alpha)] = identities.iota_enclosure((x, alpha), policy)
        return found

    def fill_iota(self, points, policy):
        """Make sure the Gautschi mismatch at every point is cached"""
        key = policy.key()
        groups = {}
        for p in points:
            if (p.x, p.alpha, key) not in self._iota_cache:
                groups.setdefault((p.alpha, frac(p.x)), set()).add(p.x)
        if not groups:
            self.log.debug("Gautschi mismatch cache hit for %i points", len(points))
            return
        jobs = [
            (alpha, sorted(xs), policy) for (alpha, _), xs in sorted(groups.items())
        ]
        tic = time.perf_counter()
        for found in self.executor.map(self._ladder, jobs):
            for (x, alpha), enclosure in found.items():
                self._iota_cache[(x, alpha, key)] = enclosure
        self.log.debug(
            "Evaluated %i Gautschi ladders in %.2fs",
            len(jobs),
            time.perf_counter() - tic,
        )

    def iota(self, p, policy):
        key = (p.x, p.alpha, policy.key())
        if key not in self._iota_cache:
            self.fill_iota([p], policy)
        return self._iota_cache[key]

    def _m_job(self, job):
        d, x, policy = job
        return identities.m_enclosure(d, x, policy)

    def fill_m(self, pairs, policy):
        key = policy.key()
        missing = sorted({(d, x) for d, x in pairs if (d, x, key) not in self._m_cache})
        if not missing:
            return
        tic = time.perf_counter()
        jobs = [(d, x, policy) for d, x in missing]
        for (d, x), enclosure in zip(missing, self.executor.map(self._m_job, jobs)):
            self._m_cache[(d, x, key)] = enclosure
        self.log.debug(
            "Evaluated %i Stirling mismatches in %.2fs",
            len(missing),
            time.perf_counter() - tic,
        )

    def m(self, d, x, policy):
        key = (d, x, policy.key())
        if key not in self._m_cache:
            self.fill_m([(d, x)], policy)
        return self._m_cache[key]

    def mhat(self, d, p, policy):
        half = policy.halved()
        return identities.compose_mhat(
            d,
            p,
            self.iota(p, half),
            self.m(d, p.x + p.alpha, half),
            policy.target_width,
        )

    def target_enclosure(self, kind, p, policy):
        if kind.family == MismatchKind.IOTA:
            return self.iota(p, policy.halved())
        if kind.family == MismatchKind.M:
            return self.m(kind.d, p.x, policy)
        return self.mhat(kind.d, p, policy)

    # scans

    def _items(self, bound, grid):
        """(kind, abscissa, point) triples of the grid inside the target domains"""
        info = bound.info
        if info.family == MismatchKind.IOTA:
            shifts = [None]
        else:
            shifts = [info.d] if info.d is not None else list(grid.d_list)
        if not shifts:
            raise DomainError(f"{bound.value} needs at least one shift d in the grid")
        items = []
        for abscissa, p in grid.points():
            if info.family == MismatchKind.M and p.alpha != 0:
                continue
            for d in shifts:
                kind = bound.target(d)
                if not kind.contains(p.x, p.alpha):
                    # outside D_d for this d; not part of the scan
                    continue
                if not info.admits(p.x, p.alpha, d):
                    raise DomainError(
                        f"grid point x={p.x}, alpha={p.alpha} lies outside the domain"
                        f" of {bound.value}: {info.domain}"
                    )
                items.append((kind, abscissa, p))
        if not items:
            raise DomainError(
                f"grid {grid.describe()} has no point in the domain of {bound.value}"
            )
        return items

    def _record(self, bound, kind, abscissa, p, policy):
        info = bound.info
        target = self.target_enclosure(kind, p, policy)
        term = info.evaluate(p.x, p.alpha, kind.d)
        value = Enclosure.from_term(term)
        margin = value - target if info.side is Side.UPPER else target - value
        point = ScanPoint(p.x, p.alpha if kind.interpolated else None, kind.d)
        status = classify(margin, self.tolerance, target.width_met)
        return MarginRecord(
            point,
            abscissa,
            target,
            term.value,
            margin,
            status,
            _touching(margin, self.tolerance),
        )

    def scan_bound(self, bound, grid=None, policy=None):
        """Certify one catalog bound over a grid"""
        if not isinstance(bound, BoundId):
            bound = BoundId.parse(bound)
        grid = grid if grid is not None else self.default_grid(bound)
        policy = policy if policy is not None else self.policy
        evidence = bound.provenance is not Provenance.PROVED
        if bound.provenance is Provenance.CONJECTURED:
            self.log.warning(
                "%s is conjectured; the scan is evidence, not proof", bound.value
            )

        tic = time.perf_counter()
        self.log.info("Scanning %s over %s", bound.value, grid.describe())
        items = self._items(bound, grid)
        self._fill(items, policy)
        records = [self._record(bound, *item, policy) for item in items]

        retry = [i for i, r in enumerate(records) if r.status == INDETERMINATE]
        refined = 0
        if retry:
            finer = policy.scaled(1.0 / self.refine_factor)
            self.log.info(
                "Refining %i indeterminate points of %s at width %g",
                len(retry),
                bound.value,
                finer.target_width,
            )
            subset = [items[i] for i in retry]
            self._fill(subset, finer)
            for i, item in zip(retry, subset):
                records[i] = self._record(bound, *item, finer)
            refined = len(retry)

        report = ScanReport(bound, grid, self.tolerance, evidence)
        report.refined = refined
        for record in records:
            report.add(record)
        self.log.info(
            "Scanned %s: %i points, %i violations, %i indeterminate in %.1fs",
            bound.value,
            report.points_checked,
            len(report.violations),
            len(report.indeterminate),
            time.perf_counter() - tic,
        )
        return report

    def _fill(self, items, policy):
        half = policy.halved()
        interpolated = [p for kind, _, p in items if kind.interpolated]
        if interpolated:
            self.fill_iota(interpolated, half)
        m_pairs = [(k.d, p.x) for k, _, p in items if k.family == MismatchKind.M]
        if m_pairs:
            self.fill_m(m_pairs, policy)
        mhat_pairs = [
            (k.d, p.x + p.alpha) for k, _, p in items if k.family == MismatchKind.MHAT
        ]
        if mhat_pairs:
            self.fill_m(mhat_pairs, half)

    def scan_conjecture(self, which, grid=None, policy=None):
        """Scan a conjecture; the report is labeled as evidence"""
        if not isinstance(which, Conjecture):
            which = Conjecture(which)
        grid = grid if grid is not None else which.default_grid(self.alpha_samples)
        report = self.scan_bound(which.bound, grid, policy)
        report.bound = which
        report.evidence = True
        return report

    def scan_proofstep(self, step, grid=None):
        """Check one closed-form proof inequality on a grid"""
        if not isinstance(step, ProofStep):
            step = ProofStep(step)
        grid = grid if grid is not None else step.default_grid(self.alpha_samples)
        if grid.x_lo < step.domain_min:
            raise DomainError(
                f"{step.value} holds for abscissae >= {step.domain_min:g},"
                f" got x_lo={grid.x_lo}"
            )
        samples = max(grid.alpha_samples, 2)
        report = ScanReport(step, grid, self.tolerance)
        for z in grid.abscissae():
            margin, tol, (alpha, t) = step.margins(z, samples)
            bad = np.nonzero(margin + tol < 0)[0]
            touching = int(np.count_nonzero(np.abs(margin) <= tol))
            records = [
                self._proofstep_record(step, z, margin, tol, alpha, t, i)
                for i in bad
            ]
            minimum = self._proofstep_record(
                step, z, margin, tol, alpha, t, int(np.argmin(margin - tol))
            )
            report.add_block(minimum, margin.size, records, touching)
        self.log.info(
            "Checked %s: %i points, %i violations, %i touching",
            step.value,
            report.points_checked,
            len(report.violations),
            report.touching,
        )
        return report

    @staticmethod
    def _proofstep_record(step, z, margin, tol, alpha, t, i):
        m, r = float(margin[i]), float(tol[i])
        enclosure = Enclosure(m - r, m + r)
        a = float(alpha[i])
        point = ScanPoint(z, None if math.isnan(a) else a, None, float(t[i]))
        status = VIOLATED if enclosure.hi < 0 else SATISFIED
        return MarginRecord(point, z, None, None, enclosure, status, abs(m) <= r)

    def scan_proofsteps(self, grid=None):
        """All proof steps; ``grid`` replaces the abscissa range of each"""
        reports = []
        for step in ProofStep:
            step_grid = grid
            if grid is not None and grid.x_lo < step.domain_min:
                step_grid = grid.replace(x_lo=step.domain_min)
            reports.append(self.scan_proofstep(step, step_grid))
        return tuple(reports)

    def scan_asymptotics(
        self, d_list=None, x_list=(1.0, 10.0, 100.0, 1000.0), alpha=0.5
    ):
        """Magnitudes of m_d(x), the Gautschi mismatch and m_hat_d along x"""
        d_list = list(self.d_list if d_list is None else d_list)
        x_list = [float(x) for x in x_list]
        if any(b <= a for a, b in zip(x_list, x_list[1:])):
            raise DomainError(f"x_list must be strictly increasing, got {x_list}")
        policy = self.policy
        header = ["x"]
        header += [f"m_{d:g}" for d in d_list]
        header += ["iota"]
        header += [f"mhat_{d:g}" for d in d_list]
        rows = []
        for x in x_list:
            p = InterpPoint(x, alpha)
            values = [_magnitude(self.m(d, x, policy)) for d in d_list]
            values.append(_magnitude(self.iota(p, policy.halved())))
            values += [_magnitude(self.mhat(d, p, policy)) for d in d_list]
            rows.append(AsymptoticsRow(x, tuple(values)))
        table = AsymptoticsTable(tuple(header), tuple(rows))
        failing = table.decays()
        if failing:
            self.log.warning("No monotone decay along x for %s", ", ".join(failing))
        return table

    def scan_concavity(self, x_list=(0.0, 0.5, 1.0, 2.0, 5.0, 10.0), samples=65):
        """Concavity of alpha -> m_hat_{1/2}(x, alpha) on an alpha grid

        First differences must not increase by more than the enclosure
        widths allow; the sampled maximum must sit at alpha = 1/2 and the
        minimum at alpha = 0.
        """
        policy = self.policy
        alphas = [j / (samples - 1) for j in range(samples)]
        checks = []
        for x in x_list:
            points = [InterpPoint(x, a) for a in alphas]
            self.fill_iota(points, policy.halved())
            values = [self.mhat(0.5, p, policy) for p in points]
            mids = [e.midpoint() for e in values]
            widths = [e.width() for e in values]
            concave = True
            largest = -math.inf
            for j in range(1, samples - 1):
                second = mids[j + 1] - 2.0 * mids[j] + mids[j - 1]
                largest = max(largest, second)
                if second > widths[j + 1] + 2.0 * widths[j] + widths[j - 1]:
                    concave = False
            lowest = min(range(samples), key=lambda j: values[j].hi)
            highest = max(range(samples), key=lambda j: values[j].lo)
            check = ConcavityCheck(x, concave, alphas[highest], alphas[lowest], largest)
            if not check.ok:
                self.log.warning("Concavity structure fails at x=%s: %s", x, check)
            checks.append(check)
        return checks

    def width_comparison(self, x_list=(1.0, 10.0, 100.0)):
        """Widths of the BBE11 pair against the Burnside-form pair for m_1/2"""
        rows = []
        for x in x_list:
            lo, hi = bounds.bbe11_bounds(x)
            half_lo, half_hi = bounds.stirling_half_bounds(x)
            bbe11_width = hi - lo
            half_width = half_hi - half_lo
            rows.append(
                WidthComparison(x, bbe11_width, half_width, bbe11_width / half_width)
            )
        return rows


def scan_bound(bound, grid=None, policy=None, **kwargs):
    return GridScanner(**kwargs).scan_bound(bound, grid, policy)


def scan_conjecture(which, grid=None, policy=None, **kwargs):
    return GridScanner(**kwargs).scan_conjecture(which, grid, policy)


def scan_proofsteps(grid=None, **kwargs):
    return GridScanner(**kwargs).scan_proofsteps(grid)


def scan_asymptotics(d_list=None, x_list=(1.0, 10.0, 100.0, 1000.0), **kwargs):
    return GridScanner(**kwargs).scan_asymptotics(d_list, x_list)


def scan_concavity(x_list=(0.0, 0.5, 1.0, 2.0, 5.0, 10.0), **kwargs):
    return GridScanner(**kwargs).scan_concavity(x_list)


def width_comparison(x_list=(1.0, 10.0, 100.0)):
    return GridScanner().width_comparison(x_list)
