"""Annular decay, doubling and contiguity audits, and the l1 counterexample.

Everything here returns exact rationals or rational intervals.  Sup-norm
balls ``Q(x, r) = prod_j [x_j - r, x_j + r)`` are always exact.  l1 balls are
exact through the half-space engine unless ``method="cells"`` asks for the
inner/outer cell cover at a fixed generation; Euclidean balls only have the
cell cover.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .boxes import AxisBox, MeasureEnclosure, box_measure_rational
from .errors import DegenerateRadii, DimensionMismatch, GenerationTooLarge, MeasureError
from .measure import BernoulliMeasure, index_measure
from .polytopes import l1_ball_measure
from .rational import as_fraction, as_vector
from .regions import DEFAULT_REGION_CAP, Metric, region_enclosure

EXACT = "exact"
CELLS = "cells"

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AnnulusReport:
    center: tuple[Fraction, ...]
    r: Fraction
    R: Fraction
    metric: Metric
    annulus_measure: MeasureEnclosure
    ball_measure: MeasureEnclosure
    ratio: tuple[Fraction, Fraction | None]
    exact: bool

    @property
    def ratio_lo(self) -> Fraction:
        return self.ratio[0]

    @property
    def ratio_hi(self) -> Fraction | None:
        return self.ratio[1]


@dataclass(frozen=True)
class ScanReport:
    grid: str
    reports: tuple[AnnulusReport, ...]
    max_ratio_upper: Fraction | None
    argmax: int | None
    notes: dict = field(default_factory=dict)

    @property
    def argmax_report(self) -> AnnulusReport | None:
        return None if self.argmax is None else self.reports[self.argmax]


def _method_for(metric: Metric, method: str | None) -> str:
    if method is None or method == "auto":
        return CELLS if metric is Metric.L2 else EXACT
    if method not in (EXACT, CELLS):
        raise MeasureError(f"unknown method {method!r}")
    if method == EXACT and metric is Metric.L2:
        raise MeasureError("Euclidean balls have no exact evaluator; use method='cells'")
    return method


def ball_measure(
    measure: BernoulliMeasure,
    metric,
    center: Sequence,
    R,
    g: int = 6,
    method: str | None = None,
    cap: int = DEFAULT_REGION_CAP,
) -> MeasureEnclosure:
    """Measure of the ball of radius ``R`` (a point enclosure when exact)."""
    metric = Metric.parse(metric)
    c, big_r = as_vector(center), as_fraction(R)
    if big_r <= 0:
        raise MeasureError("radius must be positive")
    how = _method_for(metric, method)
    if how == EXACT:
        if metric is Metric.LINF:
            return MeasureEnclosure.point(box_measure_rational(measure, AxisBox.cube(c, big_r)))
        return MeasureEnclosure.point(l1_ball_measure(measure, c, big_r))
    return region_enclosure(measure, metric, c, big_r, generation=g, cap=cap)


def _ratio(ann: MeasureEnclosure, ball: MeasureEnclosure, r: Fraction, R: Fraction):
    if r == R:
        return (Fraction(0), Fraction(0))
    scale = R / (R - r)
    lo = ann.lo * scale / ball.hi
    hi = None if ball.lo == 0 else ann.hi * scale / ball.lo
    return (lo, hi)


def annulus_ratio(
    measure: BernoulliMeasure,
    metric,
    center: Sequence,
    r,
    R,
    g: int = 6,
    method: str | None = None,
    cap: int = DEFAULT_REGION_CAP,
) -> AnnulusReport:
    """``mu(B_R \\ B_r) / (((R - r) / R) mu(B_R))`` as a rational interval."""
    metric = Metric.parse(metric)
    c, small, big = as_vector(center), as_fraction(r), as_fraction(R)
    if small <= 0 or small > big:
        raise DegenerateRadii(f"need 0 < r <= R, got r={small}, R={big}")
    how = _method_for(metric, method)
    if how == EXACT:
        ball = ball_measure(measure, metric, c, big, method=EXACT)
        inner = ball_measure(measure, metric, c, small, method=EXACT)
        ann = MeasureEnclosure.point(ball.lo - inner.lo)
    else:
        ball = region_enclosure(measure, metric, c, big, generation=g, cap=cap)
        ann = region_enclosure(measure, metric, c, big, small, generation=g, cap=cap)
    ratio = _ratio(ann, ball, small, big)
    return AnnulusReport(c, small, big, metric, ann, ball, ratio, ann.exact and ball.exact)


def cube_center_grid(dim: int, generation: int, p: int = 3) -> list[tuple[Fraction, ...]]:
    """Centers of all generation-``n`` cubes of ``Q_0``, in lexicographic order."""
    size = p**generation
    ticks = [Fraction(-1, 2) + Fraction(2 * k + 1, 2 * size) for k in range(size)]
    return [tuple(c) for c in itertools.product(ticks, repeat=dim)]


def radius_family(ks: Iterable[int], js: Iterable[int], p: int = 3) -> list[tuple[Fraction, Fraction]]:
    """Pairs ``(r, R)`` with ``R = p^-k / 2`` and ``r = R (1 - p^-j)``."""
    out = []
    for k in ks:
        big = Fraction(1, 2 * p**k)
        for j in js:
            out.append((big * (1 - Fraction(1, p**j)), big))
    return out


def _scan_one(args):
    measure, metric, center, r, R, g, method = args
    return annulus_ratio(measure, metric, center, r, R, g=g, method=method)


def adc_scan(
    measure: BernoulliMeasure,
    metric,
    centers: Sequence[Sequence],
    radii: Sequence[tuple],
    g: int = 6,
    method: str | None = None,
    jobs: int = 1,
    grid: str = "",
) -> ScanReport:
    """Annulus ratios over ``centers x radii``, ordered center-major."""
    metric = Metric.parse(metric)
    tasks = [
        (measure, metric, as_vector(c), as_fraction(r), as_fraction(R), g, method)
        for c in centers
        for r, R in radii
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_scan_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        reports = [_scan_one(t) for t in tasks]
    best, arg = None, None
    for i, rep in enumerate(reports):
        hi = rep.ratio_hi
        if hi is None:
            best, arg = None, i
            break
        if best is None or hi > best:
            best, arg = hi, i
    desc = grid or f"{len(centers)} centers x {len(radii)} radius pairs, metric={metric.value}"
    return ScanReport(desc, tuple(reports), best, arg)


def doubling_constant(measure: BernoulliMeasure) -> Fraction:
    """``2^N a_min^{-N-3}``."""
    return Fraction(2**measure.dim) / measure.a_min ** (measure.dim + 3)


def doubling_ratio(measure: BernoulliMeasure, center: Sequence, r) -> Interval:
    """``mu(Q(x, 2r)) / mu(Q(x, r))``, exact for rational data."""
    c, rad = as_vector(center), as_fraction(r)
    if rad <= 0:
        raise MeasureError("radius must be positive")
    big = box_measure_rational(measure, AxisBox.cube(c, 2 * rad))
    small = box_measure_rational(measure, AxisBox.cube(c, rad))
    v = big / small
    return (v, v)


def contiguous_pair_audit(measure: BernoulliMeasure, n: int, max_cells: int = 2_000_000) -> Fraction:
    """Smallest ``mu(Q) / mu(Q')`` over face-adjacent generation-``n`` cubes.

    Both orders of every pair are included, as are pairs that meet across
    the boundary of ``Q_0`` (compared through periodicity).
    """
    size = measure.p**n
    if size**measure.dim > max_cells:
        raise GenerationTooLarge(f"{size ** measure.dim} cells exceed the enumeration cap {max_cells}")
    masses = {k: index_measure(measure, n, k) for k in itertools.product(range(size), repeat=measure.dim)}
    best = None
    for k, mk in masses.items():
        for j in range(measure.dim):
            nb = list(k)
            nb[j] = (nb[j] + 1) % size
            mn = masses[tuple(nb)]
            low = min(mk / mn, mn / mk)
            if best is None or low < best:
                best = low
    return best


def _require_plane_length_class(measure: BernoulliMeasure) -> None:
    if measure.dim != 2:
        raise DimensionMismatch(f"the chain lives in the plane; measure has N={measure.dim}")
    if measure.coefficients is None:
        raise MeasureError("chain audit needs length-class coefficients")


def epsilon_of(measure: BernoulliMeasure) -> Fraction:
    """Position on the planar line, recovered as ``1/9 - a_2``."""
    _require_plane_length_class(measure)
    a0, a1, a2 = measure.coefficients
    eps = Fraction(1, 9) - a2
    if (a0, a1) != (Fraction(1, 9) - 4 * eps, Fraction(1, 9) + 2 * eps):
        raise MeasureError("coefficients are not on the line (1/9 - 4e, 1/9 + 2e, 1/9 - e)")
    return eps


def chain_target(eps, n: int) -> Fraction:
    return (Fraction(1, 3) + 3 * Fraction(eps)) ** n


def chain_measure(measure: BernoulliMeasure, n: int) -> Fraction:
    """Exact mass of the diagonal chain of ``3^n`` generation-``n`` squares.

    The first square is ``[-1/(2 3^n), 1/(2 3^n)) x [-1/2, -1/2 + 3^-n)``,
    the others are its translates by ``j 3^-n (1, 1)``.
    """
    _require_plane_length_class(measure)
    if n < 1:
        raise MeasureError("chain depth must be >= 1")
    size = 3**n
    kx = (size - 1) // 2
    return sum((index_measure(measure, n, (kx + j, j)) for j in range(size)), Fraction(0))


D1_CENTER = (Fraction(0), Fraction(1, 2))


def d1_blowup_series(
    measure: BernoulliMeasure,
    n_max: int,
    g: int | None = None,
    method: str = EXACT,
    n_min: int = 1,
) -> list[AnnulusReport]:
    """l1 annulus ratios at center ``(0, 1/2)``, ``R = 1``, ``r_n = 1 - 3^-n``.

    With ``method="cells"`` each ``n`` uses generation ``g`` (default ``n + 2``).
    """
    _require_plane_length_class(measure)
    out = []
    for n in range(n_min, n_max + 1):
        gen = n + 2 if g is None else g
        r_n = 1 - Fraction(1, 3**n)
        out.append(annulus_ratio(measure, Metric.L1, D1_CENTER, r_n, 1, g=gen, method=method))
    return out


def growth_quotients(reports: Sequence[AnnulusReport]) -> list[Fraction | None]:
    """Certified lower bounds ``rho_{n+1}^lo / rho_n^hi`` for consecutive reports."""
    out = []
    for a, b in zip(reports, reports[1:]):
        out.append(None if a.ratio_hi in (None, 0) else b.ratio_lo / a.ratio_hi)
    return out


def annulus_strips(center: Sequence, r, R) -> list[AxisBox]:
    """The ``2N`` coordinate strips of thickness ``R - r`` covering ``Q(x,R) \\ Q(x,r)``."""
    c, small, big = as_vector(center), as_fraction(r), as_fraction(R)
    if not 0 < small < big:
        raise DegenerateRadii("need 0 < r < R")
    out = []
    for m in range(len(c)):
        for side in (-1, 1):
            lo = [t - big for t in c]
            hi = [t + big for t in c]
            if side < 0:
                hi[m] = c[m] - small
            else:
                lo[m] = c[m] + small
            out.append(AxisBox(tuple(lo), tuple(hi)))
    return out


def strip_constant(measure: BernoulliMeasure, center: Sequence, r, R) -> tuple[Fraction, Fraction, Fraction]:
    """Annulus mass, total strip mass, and the worst ``mu(strip) R / (h mu(Q(x,R)))``."""
    c, small, big = as_vector(center), as_fraction(r), as_fraction(R)
    ball = box_measure_rational(measure, AxisBox.cube(c, big))
    ann = ball - box_measure_rational(measure, AxisBox.cube(c, small))
    h = big - small
    strips = [box_measure_rational(measure, s) for s in annulus_strips(c, small, big)]
    worst = max(s * big / (h * ball) for s in strips)
    return ann, sum(strips), worst


def sphere_shell_measures(measure: BernoulliMeasure, center: Sequence, R, generations: Iterable[int]) -> list[Fraction]:
    """``mu{y : R - 3^-g <= |y - x|_inf < R}`` for each ``g``; these shrink to 0."""
    c, big = as_vector(center), as_fraction(R)
    outer = box_measure_rational(measure, AxisBox.cube(c, big))
    out = []
    for g in generations:
        inner_r = big - Fraction(1, measure.p**g)
        inner = box_measure_rational(measure, AxisBox.cube(c, inner_r)) if inner_r > 0 else Fraction(0)
        out.append(outer - inner)
    return out


def doubling_grid(
    measure: BernoulliMeasure, centers: Sequence[Sequence], radii: Sequence
) -> list[tuple[tuple[Fraction, ...], Fraction, Fraction]]:
    """``(center, r, ratio)`` for every grid sample, center-major."""
    out = []
    for c in centers:
        for r in radii:
            out.append((as_vector(c), as_fraction(r), doubling_ratio(measure, c, r)[1]))
    return out
