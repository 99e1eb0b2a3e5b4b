"""Certified enclosures of metric balls and annuli by cell classification.

Cells are refined level by level as numpy integer arrays.  Coordinates are
scaled by ``2 L p^g`` (``L`` clears the denominators of the center and radii)
so every distance comparison is an exact integer comparison; squared
distances are used for the Euclidean metric.  Cells entirely inside the
region go to both bounds, cells straddling its boundary are refined, and
whatever still straddles at generation ``g`` goes to the upper bound only.

A cell's mass is a product of child probabilities, so each cell carries only
the count of each distinct probability along its path; exact masses are
summed once per distinct count vector.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .boxes import MeasureEnclosure
from .errors import GenerationTooLarge, MeasureError
from .measure import BernoulliMeasure
from .rational import as_fraction, as_vector

DEFAULT_REGION_CAP = 12
_INT64_SAFE = 2**61


class Metric(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value) -> "Metric":
        if isinstance(value, Metric):
            return value
        return cls(str(value).lower())


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _mass_of_rows(values: Sequence[Fraction], exps: np.ndarray) -> Fraction:
    if len(exps) == 0:
        return Fraction(0)
    rows, counts = np.unique(exps, axis=0, return_counts=True)
    total = Fraction(0)
    for row, count in zip(rows.tolist(), counts.tolist()):
        term = Fraction(count)
        for v, e in zip(values, row):
            if e:
                term *= v**e
        total += term
    return total


def _distance_bounds(metric: Metric, lo, hi, center):
    """Exact min and max distance (squared for L2) from ``center`` to each cell closure."""
    below = center - hi
    above = lo - center
    near = np.maximum(np.maximum(below, above), 0)
    far = np.maximum(np.abs(lo - center), np.abs(hi - center))
    if metric is Metric.L1:
        return near.sum(axis=1), far.sum(axis=1)
    if metric is Metric.L2:
        return (near * near).sum(axis=1), (far * far).sum(axis=1)
    return near.max(axis=1), far.max(axis=1)


def region_enclosure(
    measure: BernoulliMeasure,
    metric,
    center: Sequence,
    outer,
    inner=None,
    generation: int = 6,
    cap: int = DEFAULT_REGION_CAP,
) -> MeasureEnclosure:
    """Enclose ``mu{y : inner < d(center, y) <= outer}``.

    With ``inner=None`` the region is the closed ball of radius ``outer``.
    """
    metric = Metric.parse(metric)
    if generation < 0:
        raise MeasureError("generation must be nonnegative")
    if generation > cap:
        raise GenerationTooLarge(f"generation {generation} exceeds cap {cap}")
    c = as_vector(center)
    if len(c) != measure.dim:
        raise MeasureError("center has the wrong dimension")
    big_r = as_fraction(outer)
    small_r = None if inner is None else as_fraction(inner)
    if big_r <= 0:
        raise MeasureError("radius must be positive")
    if small_r is not None and small_r >= big_r:
        return MeasureEnclosure(Fraction(0), Fraction(0), generation)

    p, dim, g = measure.p, measure.dim, generation
    dens = [t.denominator for t in c] + [big_r.denominator]
    if small_r is not None:
        dens.append(small_r.denominator)
    ell = _lcm(dens)
    scale = 2 * ell * p**g
    origin = -ell * p**g  # scaled coordinate of -1/2

    extent = max(abs(t) for t in c) + big_r + 2
    bound = int(math.ceil(extent * scale)) * 2
    exact_ints = (bound * bound * dim if metric is Metric.L2 else bound * dim) < _INT64_SAFE
    dtype = np.int64 if exact_ints else object

    def scaled(x: Fraction) -> int:
        v = x * scale
        assert v.denominator == 1
        return int(v)

    cvec = np.array([scaled(t) for t in c], dtype=dtype)
    rho_out = scaled(big_r)
    rho_in = None if small_r is None else scaled(small_r)
    if metric is Metric.L2:
        rho_out = rho_out * rho_out
        rho_in = None if rho_in is None else rho_in * rho_in

    values, class_of = measure.classes()
    n_classes = len(values)
    class_of = np.asarray(class_of)

    # level 0: unit cells meeting the closed bounding box
    ranges = [
        np.arange(math.floor(t - big_r + Fraction(1, 2)), math.floor(t + big_r + Fraction(1, 2)) + 1)
        for t in c
    ]
    grids = np.meshgrid(*ranges, indexing="ij")
    keys = np.stack([gr.ravel() for gr in grids], axis=1).astype(np.int64)
    exps = np.zeros((len(keys), n_classes), dtype=np.int16)

    offsets = np.stack(
        [gr.ravel() for gr in np.meshgrid(*[np.arange(p)] * dim, indexing="ij")], axis=1
    ).astype(np.int64)
    child_class = np.zeros((p**dim, n_classes), dtype=np.int16)
    child_class[np.arange(p**dim), class_of] = 1

    lo_total = Fraction(0)
    straddle_total = Fraction(0)
    for depth in range(g + 1):
        if len(keys) == 0:
            break
        side = 2 * ell * p ** (g - depth)
        k = keys.astype(dtype) if dtype is object else keys
        lo = origin + k * side
        hi = lo + side
        near, far = _distance_bounds(metric, lo, hi, cvec)
        if rho_in is None:
            inside = far <= rho_out
            outside = near > rho_out
        else:
            inside = (near > rho_in) & (far <= rho_out)
            outside = (near > rho_out) | (far <= rho_in)
        inside = np.asarray(inside, dtype=bool)
        outside = np.asarray(outside, dtype=bool)
        lo_total += _mass_of_rows(values, exps[inside])
        straddle = ~(inside | outside)
        keys, exps = keys[straddle], exps[straddle]
        if depth == g:
            straddle_total = _mass_of_rows(values, exps)
            break
        n = len(keys)
        keys = (keys[:, None, :] * p + offsets[None, :, :]).reshape(n * p**dim, dim)
        exps = (exps[:, None, :] + child_class[None, :, :]).reshape(n * p**dim, n_classes)
    return MeasureEnclosure(lo_total, lo_total + straddle_total, g)
