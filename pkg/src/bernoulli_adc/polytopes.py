"""Exact measures of rational polytopes with fixed facet normals.

A region ``{x : a_i . x <= b_i}`` seen from a rescaled cube ``[0, 1)^N``
keeps its normals; only the offsets change, ``b -> p b - a . o`` for the
child at offset ``o``.  Half-spaces containing the whole cube are dropped,
and a cube outside any one half-space is empty, so the rescaled states are
offset tuples in a bounded window.  With rational offsets there are finitely
many, and the same self-similar solver used for boxes applies.

Facets carry no mass: each lies in a hyperplane whose intersection with a
generation-``n`` cube has relative mass at most ``(1 - a_min)^n``.  So open
and closed polytopes have equal measure and the value is exact.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .boxes import solve_self_similar
from .errors import MeasureError
from .measure import HALF, BernoulliMeasure
from .rational import as_fraction, as_vector

_EMPTY = "empty"


def _clip_state(normals, offsets):
    """Drop redundant half-spaces; return the surviving offsets or EMPTY."""
    out = []
    for a, b in zip(normals, offsets):
        if b is None:
            out.append(None)
            continue
        top = sum(v for v in a if v > 0)
        bottom = sum(v for v in a if v < 0)
        if b <= bottom:
            return _EMPTY
        out.append(None if b >= top else b)
    return tuple(out)


def _expand(measure: BernoulliMeasure, normals, state):
    p = measure.p
    const = Fraction(0)
    deps: dict = {}
    offsets_iter = itertools.product(range(p), repeat=measure.dim)
    for flat, o in enumerate(offsets_iter):
        child = []
        for a, b in zip(normals, state):
            if b is None:
                child.append(None)
            else:
                child.append(p * b - sum(ai * oi for ai, oi in zip(a, o)))
        clipped = _clip_state(normals, child)
        if clipped == _EMPTY:
            continue
        w = measure.probs[flat]
        if all(b is None for b in clipped):
            const += w
        else:
            deps[clipped] = deps.get(clipped, 0) + w
    return const, deps


def polytope_measure(measure: BernoulliMeasure, normals: Sequence[Sequence[int]], offsets: Sequence) -> Fraction:
    """Exact ``mu{x : a_i . x <= b_i for all i}`` for a bounded polytope.

    ``normals`` are integer vectors; ``offsets`` are rationals.
    """
    normals = tuple(tuple(int(v) for v in a) for a in normals)
    offsets = as_vector(offsets)
    if any(len(a) != measure.dim for a in normals):
        raise MeasureError("normal vectors must match the measure's dimension")
    lo, hi = _bounding_box(normals, offsets, measure.dim)
    memo = measure._cache.setdefault(("polytope", normals), {})
    total = Fraction(0)
    ranges = [range(math.floor(a + HALF), math.floor(b + HALF) + 1) for a, b in zip(lo, hi)]
    for z in itertools.product(*ranges):
        base = [zj - HALF for zj in z]
        local = [b - sum(ai * bj for ai, bj in zip(a, base)) for a, b in zip(normals, offsets)]
        state = _clip_state(normals, local)
        if state == _EMPTY:
            continue
        if all(b is None for b in state):
            total += 1
        else:
            total += solve_self_similar(memo, state, lambda s: _expand(measure, normals, s))
    return total


def _bounding_box(normals, offsets, dim):
    """Axis bounds from pairs of facets mirrored in one coordinate."""
    lo = [None] * dim
    hi = [None] * dim
    # Sum pairs of facets whose normals differ only in coordinate j's sign.
    index = {a: b for a, b in zip(normals, offsets)}
    for j in range(dim):
        for a, b in index.items():
            if a[j] == 0:
                continue
            mirror = tuple(-v if i != j else v for i, v in enumerate(a))
            if mirror in index:
                # a.x <= b and mirror.x <= b' give 2 a_j x_j <= b + b'
                bound = (b + index[mirror]) / (2 * a[j])
                if a[j] > 0:
                    hi[j] = bound if hi[j] is None else min(hi[j], bound)
                else:
                    lo[j] = bound if lo[j] is None else max(lo[j], bound)
    if any(v is None for v in lo + hi):
        raise MeasureError("polytope is not bounded by mirrored facet pairs")
    return lo, hi


def l1_ball_measure(measure: BernoulliMeasure, center: Sequence, radius) -> Fraction:
    """Exact ``mu{y : |y - c|_1 <= R}``."""
    c = as_vector(center)
    r = as_fraction(radius)
    if r <= 0:
        return Fraction(0)
    normals = list(itertools.product((-1, 1), repeat=measure.dim))
    offsets = [r + sum(s * t for s, t in zip(a, c)) for a in normals]
    return polytope_measure(measure, normals, offsets)


def linf_ball_measure(measure: BernoulliMeasure, center: Sequence, radius) -> Fraction:
    """Exact ``mu{y : |y - c|_inf <= R}`` through the half-space engine."""
    c = as_vector(center)
    r = as_fraction(radius)
    if r <= 0:
        return Fraction(0)
    normals, offsets = [], []
    for j in range(measure.dim):
        for s in (1, -1):
            a = tuple(s if i == j else 0 for i in range(measure.dim))
            normals.append(a)
            offsets.append(r + s * c[j])
    return polytope_measure(measure, normals, offsets)
