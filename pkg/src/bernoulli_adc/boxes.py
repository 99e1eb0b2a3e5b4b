"""Exact and enclosed measures of axis-parallel half-open boxes.

The workhorse is the *relative* measure of a box inside one cube.  Rescale
the cube to ``[0, 1)^N``; the box becomes a tuple of per-axis intervals.
Splitting the cube into its children maps every interval to the children's
coordinates, so

    F(box) = sum_nu p_nu * F(box seen from child nu)

with ``F(full) = 1`` and ``F(empty) = 0``.  When every endpoint has a finite
base-p expansion the recursion bottoms out; for any other rational endpoint
the expansion is eventually periodic, the set of rescaled boxes is still
finite, and the recursion becomes a finite linear system that is solved
exactly.  Either way only a handful of distinct rescaled boxes appear per
generation, so memoizing ``F`` makes deep boxes cheap.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    ADCClassRequired,
    GenerationTooLarge,
    IndexOutOfRange,
    MeasureError,
    NotGridRational,
    StripNotContained,
)
from .measure import HALF, BernoulliMeasure, PAdicCube, PAdicPath, cube_measure
from .rational import as_vector, is_grid_rational

DEFAULT_GENERATION_CAP = 64
MAX_STATES = 200_000

_FULL = "full"
_EMPTY = "empty"
_UNIT = (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class AxisBox:
    """Half-open box ``prod_j [lo_j, hi_j)`` with exact rational corners."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def __post_init__(self):
        lo, hi = as_vector(self.lo), as_vector(self.hi)
        if len(lo) != len(hi) or not lo:
            raise MeasureError("box corners must have the same positive dimension")
        if any(a >= b for a, b in zip(lo, hi)):
            raise MeasureError(f"box is empty or inverted: lo={lo}, hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def volume(self) -> Fraction:
        return math.prod((b - a for a, b in zip(self.lo, self.hi)), start=Fraction(1))

    def translate(self, z: Sequence) -> "AxisBox":
        z = as_vector(z)
        return AxisBox(tuple(a + d for a, d in zip(self.lo, z)), tuple(b + d for b, d in zip(self.hi, z)))

    def contains_box(self, other: "AxisBox") -> bool:
        return all(a <= c and d <= b for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi))

    def is_grid(self, p: int) -> bool:
        return all(is_grid_rational(t, p) for t in self.lo + self.hi)

    @classmethod
    def cube(cls, center: Sequence, radius) -> "AxisBox":
        """The sup-norm ball ``Q(x, r) = prod_j [x_j - r, x_j + r)``."""
        c = as_vector(center)
        r = Fraction(radius)
        return cls(tuple(t - r for t in c), tuple(t + r for t in c))

    @classmethod
    def from_cube(cls, cube: PAdicCube) -> "AxisBox":
        return cls(cube.lower(), cube.upper())


@dataclass(frozen=True)
class MeasureEnclosure:
    """Certified interval ``[lo, hi]`` containing a measure value."""

    lo: Fraction
    hi: Fraction
    generation: int | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    @classmethod
    def point(cls, value: Fraction, generation: int | None = None) -> "MeasureEnclosure":
        return cls(value, value, generation)


# --------------------------------------------------------------------------
# relative-measure engine


def _clip(s: Fraction, t: Fraction):
    if t <= 0 or s >= 1:
        return _EMPTY
    if s <= 0 and t >= 1:
        return _FULL
    return (max(s, Fraction(0)), min(t, Fraction(1)))


def _axis_children(p: int, interval) -> list:
    if interval == _UNIT:
        return [_FULL] * p
    s, t = interval
    return [_clip(p * s - o, p * t - o) for o in range(p)]


def _expand(measure: BernoulliMeasure, state) -> tuple[Fraction, dict]:
    """One level of the recursion: constant term and partial-child weights."""
    per_axis = [_axis_children(measure.p, iv) for iv in state]
    const = Fraction(0)
    deps: dict = {}
    probs = measure.probs
    for flat, combo in enumerate(itertools.product(*per_axis)):
        if _EMPTY in combo:
            continue
        w = probs[flat]
        if all(c == _FULL for c in combo):
            const += w
        else:
            child = tuple(_UNIT if c == _FULL else c for c in combo)
            deps[child] = deps.get(child, 0) + w
    return const, deps


def _tarjan(nodes, edges) -> list[list]:
    """Strongly connected components, sinks first."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in edges:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def solve_self_similar(memo: dict, root, expand) -> Fraction:
    """Solve ``F(s) = const(s) + sum_d w(s, d) F(d)`` for ``F(root)``.

    ``expand(s)`` returns ``(const, {d: w})``.  States reachable from
    ``root`` must be finitely many.  Strongly connected components are
    solved sinks first; singletons (with or without a self-loop) directly,
    larger components by exact elimination.  Results are stored in ``memo``.
    """
    if root in memo:
        return memo[root]
    eqs: dict = {}
    todo = [root]
    while todo:
        s = todo.pop()
        if s in memo or s in eqs:
            continue
        eqs[s] = expand(s)
        if len(eqs) > MAX_STATES:
            raise GenerationTooLarge("query generates too many distinct rescaled states")
        todo.extend(d for d in eqs[s][1] if d not in memo and d not in eqs)
    edges = {s: list(deps) for s, (_, deps) in eqs.items()}
    for comp in _tarjan(list(eqs), edges):
        members = set(comp)
        if len(comp) == 1:
            s = comp[0]
            const, deps = eqs[s]
            rhs = const + sum((w * memo[d] for d, w in deps.items() if d != s), Fraction(0))
            memo[s] = rhs / (1 - deps.get(s, 0))
            continue
        pos = {s: i for i, s in enumerate(comp)}
        a = [[Fraction(int(i == j)) for j in range(len(comp))] for i in range(len(comp))]
        b = []
        for s in comp:
            const, deps = eqs[s]
            rhs = const
            for d, w in deps.items():
                if d in members:
                    a[pos[s]][pos[d]] -= w
                else:
                    rhs += w * memo[d]
            b.append(rhs)
        for s, v in zip(comp, linalg.solve(a, b)):
            memo[s] = v
    return memo[root]


def relative_measure(measure: BernoulliMeasure, state) -> Fraction:
    """Exact ``mu(box within cube) / mu(cube)`` for a rescaled box ``state``."""
    memo = measure._cache.setdefault("relative", {})
    return solve_self_similar(memo, state, lambda s: _expand(measure, s))


def relative_enclosure(measure: BernoulliMeasure, state, depth: int) -> tuple[Fraction, Fraction]:
    """Inner/outer cover of a rescaled box using cubes ``depth`` levels down."""
    memo = measure._cache.setdefault("enclosure", {})
    key = (state, depth)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if depth == 0:
        result = (Fraction(0), Fraction(1))
    else:
        const, deps = _expand(measure, state)
        lo = hi = const
        for d, w in deps.items():
            dlo, dhi = relative_enclosure(measure, d, depth - 1)
            lo += w * dlo
            hi += w * dhi
        result = (lo, hi)
    memo[key] = result
    return result


def _unit_cells(box: AxisBox):
    """Per axis: list of (count, rescaled interval) over the unit cells it meets."""
    axes = []
    for a, b in zip(box.lo, box.hi):
        first = math.floor(a + HALF)
        last = math.ceil(b + HALF) - 1
        entries: dict = {}
        for z in range(first, last + 1):
            base = z - HALF
            iv = _clip(a - base, b - base)
            if iv == _EMPTY:
                continue
            key = _UNIT if iv == _FULL else iv
            entries[key] = entries.get(key, 0) + 1
        axes.append(list(entries.items()))
    return axes


def _check_dim(measure: BernoulliMeasure, box: AxisBox) -> None:
    if box.dim != measure.dim:
        raise IndexOutOfRange(f"box has dimension {box.dim}, measure has {measure.dim}")


def box_measure_rational(measure: BernoulliMeasure, box: AxisBox) -> Fraction:
    """Exact measure of a box with arbitrary rational corners."""
    _check_dim(measure, box)
    total = Fraction(0)
    for combo in itertools.product(*_unit_cells(box)):
        count = math.prod(c for _, c in combo)
        state = tuple(iv for iv, _ in combo)
        if all(iv == _UNIT for iv in state):
            total += count
        else:
            total += count * relative_measure(measure, state)
    return total


def _require_grid(box: AxisBox, p: int) -> None:
    for t in box.lo + box.hi:
        if not is_grid_rational(t, p):
            raise NotGridRational(f"endpoint {t} has no finite base-{p} expansion from -1/2")


def box_measure_exact(measure: BernoulliMeasure, box: AxisBox) -> Fraction:
    """Exact measure of a box whose corners lie on the shifted p-adic grid."""
    _check_dim(measure, box)
    _require_grid(box, measure.p)
    return box_measure_rational(measure, box)


def box_measure_enclosure(
    measure: BernoulliMeasure,
    box: AxisBox,
    generation: int,
    cap: int = DEFAULT_GENERATION_CAP,
) -> MeasureEnclosure:
    """Sum of generation-``g`` cubes inside the box, and of cubes meeting it."""
    _check_dim(measure, box)
    if generation < 0:
        raise MeasureError("generation must be nonnegative")
    if generation > cap:
        raise GenerationTooLarge(f"generation {generation} exceeds cap {cap}")
    lo = hi = Fraction(0)
    for combo in itertools.product(*_unit_cells(box)):
        count = math.prod(c for _, c in combo)
        state = tuple(iv for iv, _ in combo)
        if all(iv == _UNIT for iv in state):
            lo += count
            hi += count
        else:
            a, b = relative_enclosure(measure, state, generation)
            lo += count * a
            hi += count * b
    return MeasureEnclosure(lo, hi, generation)


def box_decompose(box: AxisBox, p: int = 3) -> list[PAdicCube]:
    """Disjoint maximal p-adic cubes whose union is exactly ``box``.

    Each cube is as coarse as the box allows; the list is ordered by
    generation, then by lower corner.
    """
    _require_grid(box, p)
    dim = box.dim
    out: list[PAdicCube] = []
    ranges = [range(math.floor(a + HALF), math.ceil(b + HALF)) for a, b in zip(box.lo, box.hi)]
    stack = [PAdicCube(PAdicPath(dim, p, ()), z) for z in itertools.product(*ranges)]
    while stack:
        cube = stack.pop()
        lo, hi = cube.lower(), cube.upper()
        if any(h <= a or l >= b for l, h, a, b in zip(lo, hi, box.lo, box.hi)):
            continue
        if all(a <= l and h <= b for l, h, a, b in zip(lo, hi, box.lo, box.hi)):
            out.append(cube)
        else:
            stack.extend(cube.children())
    out.sort(key=lambda c: (c.generation, c.lower()))
    return out


def adc_residuals(coefficients: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """Left sides minus 1/3 of the two strip-balance equations."""
    n = len(coefficients) - 1
    w = [2**k * math.comb(n - 1, k) for k in range(n)]
    r1 = sum(wk * coefficients[k] for k, wk in enumerate(w)) - Fraction(1, 3)
    r2 = sum(wk * coefficients[k + 1] for k, wk in enumerate(w)) - Fraction(1, 3)
    return r1, r2


def is_adc_class(measure: BernoulliMeasure) -> bool:
    return (
        measure.p == 3
        and measure.coefficients is not None
        and adc_residuals(measure.coefficients) == (0, 0)
    )


def strip_measure(
    measure: BernoulliMeasure,
    parent: PAdicCube,
    axis: int,
    offset,
    thickness,
) -> Fraction:
    """Measure of a coordinate strip inside a triadic cube.

    For coefficients balancing every third-slab, a strip of thickness ``h``
    inside a generation-``n`` cube carries exactly ``3^n h`` of the cube's
    mass.  The value is cross-checked against the box engine before it is
    returned.
    """
    if not is_adc_class(measure):
        raise ADCClassRequired("strip identity needs p = 3 length-class coefficients solving the balance system")
    if not 0 <= axis < measure.dim:
        raise IndexOutOfRange(f"axis {axis} out of range for N={measure.dim}")
    s, h = Fraction(offset), Fraction(thickness)
    lo, hi = list(parent.lower()), list(parent.upper())
    if h <= 0 or s < lo[axis] or s + h > hi[axis]:
        raise StripNotContained(f"strip [{s}, {s + h}) is not inside [{lo[axis]}, {hi[axis]})")
    value = 3**parent.generation * h * cube_measure(measure, parent)
    lo[axis], hi[axis] = s, s + h
    check = box_measure_rational(measure, AxisBox(tuple(lo), tuple(hi)))
    if check != value:
        raise AssertionError(f"strip identity violated: {value} != {check}")
    return value
