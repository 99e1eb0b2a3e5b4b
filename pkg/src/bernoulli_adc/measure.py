"""Bernoulli product measures on R^N and their values on p-adic cubes.

A measure is fixed by an odd division number ``p = 2q + 1`` and a probability
``p_nu`` for each child label ``nu`` in ``{-q, ..., q}^N``.  Every generation
splits each cube of ``Q_0 = [-1/2, 1/2)^N`` into ``p^N`` children and hands
child ``nu`` the fraction ``p_nu`` of its parent's mass; the result is
extended to R^N by integer translations.

Cubes are half-open.  A generation-``n`` cube is addressed either by its path
of child labels or by its integer lattice index ``k``: the cube
``prod_j [-1/2 + k_j / p^n, -1/2 + (k_j + 1) / p^n)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import (
    BadDivisionNumber,
    IndexOutOfRange,
    MeasureError,
    NonPositiveProbability,
    NotNormalized,
)
from .rational import as_fraction, as_vector

HALF = Fraction(1, 2)

LENGTH_CLASS = "length-class"
GENERAL = "general"


def index_length(nu: Sequence[int]) -> int:
    """Length of a child label: the sum of the absolute values of its entries."""
    return sum(abs(v) for v in nu)


def child_labels(dim: int, p: int) -> list[tuple[int, ...]]:
    """All child labels in flat-index order (lexicographic in the offsets)."""
    q = p // 2
    return list(itertools.product(range(-q, q + 1), repeat=dim))


def normalization_weights(dim: int) -> list[int]:
    """Number of labels in ``{-1, 0, 1}^dim`` of each length ``k``: 2^k C(dim, k)."""
    return [2**k * math.comb(dim, k) for k in range(dim + 1)]


@dataclass(frozen=True)
class BernoulliSpec:
    """Unvalidated description of a measure, as read from a spec file."""

    dim: int
    p: int = 3
    mode: str = LENGTH_CLASS
    coefficients: tuple[Fraction, ...] | None = None
    probabilities: Mapping[tuple[int, ...], Fraction] | None = None

    @classmethod
    def length_class(cls, coefficients: Sequence) -> "BernoulliSpec":
        coeffs = as_vector(coefficients)
        return cls(dim=len(coeffs) - 1, p=3, mode=LENGTH_CLASS, coefficients=coeffs)

    @classmethod
    def general(cls, dim: int, p: int, probabilities: Mapping) -> "BernoulliSpec":
        table = {tuple(int(v) for v in nu): as_fraction(w) for nu, w in probabilities.items()}
        return cls(dim=dim, p=p, mode=GENERAL, probabilities=table)

    @classmethod
    def uniform(cls, dim: int, p: int = 3) -> "BernoulliSpec":
        if p == 3:
            return cls.length_class([Fraction(1, 3**dim)] * (dim + 1))
        w = Fraction(1, p**dim)
        return cls.general(dim, p, {nu: w for nu in child_labels(dim, p)})


@dataclass(frozen=True)
class BernoulliMeasure:
    """Validated, immutable measure handle.

    ``probs[i]`` is the probability of the child with flat index ``i``; see
    :meth:`flat_index`.  Use :func:`validate_spec` to build one.
    """

    dim: int
    p: int
    probs: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...] | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def q(self) -> int:
        return self.p // 2

    @property
    def mode(self) -> str:
        return LENGTH_CLASS if self.coefficients is not None else GENERAL

    @property
    def a_min(self) -> Fraction:
        return min(self.probs)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.probs)) == 1

    @property
    def labels(self) -> list[tuple[int, ...]]:
        return child_labels(self.dim, self.p)

    def flat_index(self, nu: Sequence[int]) -> int:
        if len(nu) != self.dim:
            raise IndexOutOfRange(f"label {tuple(nu)} has length {len(nu)}, expected {self.dim}")
        q, idx = self.q, 0
        for v in nu:
            if not -q <= v <= q:
                raise IndexOutOfRange(f"label entry {v} outside [-{q}, {q}]")
            idx = idx * self.p + (v + q)
        return idx

    def classes(self) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
        """Distinct probability values and the class id of every child.

        Cube masses are products of these values, so counting how often each
        class occurs along a path is enough to recover the mass exactly.
        """
        cached = self._cache.get("classes")
        if cached is None:
            values = tuple(sorted(set(self.probs)))
            pos = {v: i for i, v in enumerate(values)}
            cached = (values, tuple(pos[w] for w in self.probs))
            self._cache["classes"] = cached
        return cached

    def __reduce__(self):
        return (BernoulliMeasure, (self.dim, self.p, self.probs, self.coefficients))


def validate_spec(spec: BernoulliSpec) -> BernoulliMeasure:
    """Check positivity and exact normalization and return a measure handle."""
    dim, p = int(spec.dim), int(spec.p)
    if p < 3 or p % 2 == 0:
        raise BadDivisionNumber(f"division number must be odd and >= 3, got {p}")
    if dim < 1:
        raise MeasureError(f"dimension must be >= 1, got {dim}")

    if spec.mode == LENGTH_CLASS:
        if p != 3:
            raise BadDivisionNumber("length-class coefficients require p = 3")
        if spec.coefficients is None or len(spec.coefficients) != dim + 1:
            raise MeasureError(f"length-class mode needs {dim + 1} coefficients a_0..a_{dim}")
        coeffs = as_vector(spec.coefficients)
        for k, a in enumerate(coeffs):
            if a <= 0:
                raise NonPositiveProbability(f"a_{k} = {a} is not positive")
        total = sum(w * a for w, a in zip(normalization_weights(dim), coeffs))
        if total != 1:
            raise NotNormalized(f"sum of 2^k C(N,k) a_k is {total}, not 1")
        probs = tuple(coeffs[index_length(nu)] for nu in child_labels(dim, p))
        return BernoulliMeasure(dim, p, probs, coeffs)

    if spec.mode == GENERAL:
        table = {tuple(nu): as_fraction(w) for nu, w in (spec.probabilities or {}).items()}
        labels = child_labels(dim, p)
        q = p // 2
        for nu in table:
            if len(nu) != dim or any(not -q <= v <= q for v in nu):
                raise IndexOutOfRange(f"label {nu} is not in {{-{q}..{q}}}^{dim}")
        missing = [nu for nu in labels if nu not in table]
        if missing:
            raise NonPositiveProbability(f"{len(missing)} labels have no probability, e.g. {missing[0]}")
        probs = tuple(table[nu] for nu in labels)
        bad = [nu for nu, w in zip(labels, probs) if w <= 0]
        if bad:
            raise NonPositiveProbability(f"label {bad[0]} has nonpositive probability")
        total = sum(probs)
        if total != 1:
            raise NotNormalized(f"probabilities sum to {total}, not 1")
        return BernoulliMeasure(dim, p, probs, None)

    raise MeasureError(f"unknown mode {spec.mode!r}")


def cell_probability(measure: BernoulliMeasure, nu: Sequence[int]) -> Fraction:
    return measure.probs[measure.flat_index(nu)]


@dataclass(frozen=True)
class PAdicPath:
    """Child labels from ``Q_0`` down to a generation-``n`` cube."""

    dim: int
    p: int
    steps: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        q = self.p // 2
        steps = tuple(tuple(int(v) for v in nu) for nu in self.steps)
        for nu in steps:
            if len(nu) != self.dim or any(not -q <= v <= q for v in nu):
                raise IndexOutOfRange(f"step {nu} is not a label for N={self.dim}, p={self.p}")
        object.__setattr__(self, "steps", steps)

    @property
    def generation(self) -> int:
        return len(self.steps)

    def child(self, nu: Sequence[int]) -> "PAdicPath":
        return PAdicPath(self.dim, self.p, self.steps + (tuple(nu),))


@dataclass(frozen=True)
class PAdicCube:
    path: PAdicPath
    lattice_shift: tuple[int, ...] | None = None

    def __post_init__(self):
        shift = self.lattice_shift or (0,) * self.path.dim
        if len(shift) != self.path.dim:
            raise IndexOutOfRange("lattice shift has the wrong dimension")
        object.__setattr__(self, "lattice_shift", tuple(int(z) for z in shift))

    @property
    def dim(self) -> int:
        return self.path.dim

    @property
    def p(self) -> int:
        return self.path.p

    @property
    def generation(self) -> int:
        return self.path.generation

    @property
    def side(self) -> Fraction:
        return Fraction(1, self.p**self.generation)

    def index(self) -> tuple[int, ...]:
        """Integer lattice index of this cube at its own generation."""
        p, q, n = self.p, self.p // 2, self.generation
        k = [z * p**n for z in self.lattice_shift]
        for depth, nu in enumerate(self.path.steps, start=1):
            scale = p ** (n - depth)
            for j, v in enumerate(nu):
                k[j] += (q + v) * scale
        return tuple(k)

    def lower(self) -> tuple[Fraction, ...]:
        return tuple(-HALF + Fraction(k, self.p**self.generation) for k in self.index())

    def upper(self) -> tuple[Fraction, ...]:
        s = self.side
        return tuple(lo + s for lo in self.lower())

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(lo <= xi < hi for lo, xi, hi in zip(self.lower(), as_vector(x), self.upper()))

    def children(self) -> Iterator["PAdicCube"]:
        for nu in child_labels(self.dim, self.p):
            yield PAdicCube(self.path.child(nu), self.lattice_shift)

    @classmethod
    def from_index(cls, dim: int, p: int, generation: int, k: Sequence[int]) -> "PAdicCube":
        if len(k) != dim:
            raise IndexOutOfRange("lattice index has the wrong dimension")
        size = p**generation
        q = p // 2
        shift = tuple(kj // size for kj in k)
        local = [kj % size for kj in k]
        steps = []
        for depth in range(generation):
            scale = p ** (generation - depth - 1)
            steps.append(tuple((kj // scale) % p - q for kj in local))
        return cls(PAdicPath(dim, p, tuple(steps)), shift)

    @classmethod
    def root(cls, dim: int, p: int = 3) -> "PAdicCube":
        return cls(PAdicPath(dim, p, ()))


def _path_key(measure: BernoulliMeasure, steps) -> tuple[int, ...]:
    return tuple(measure.flat_index(nu) for nu in steps)


def path_measure(measure: BernoulliMeasure, flat: Sequence[int]) -> Fraction:
    """Mass of the cube reached by a sequence of flat child indices (memoized)."""
    memo = measure._cache.setdefault("paths", {})
    key = tuple(flat)
    hit = memo.get(key)
    if hit is not None:
        return hit
    # Walk back to the longest memoized prefix, then forward.
    n = len(key)
    while n > 0 and key[:n] not in memo:
        n -= 1
    value = memo[key[:n]] if n else Fraction(1)
    for i in range(n, len(key)):
        value = value * measure.probs[key[i]]
        if i < 12:
            memo[key[: i + 1]] = value
    memo[key] = value
    return value


def cube_measure(measure: BernoulliMeasure, cube: PAdicCube) -> Fraction:
    """Mass of a p-adic cube: the product of its child probabilities."""
    if cube.dim != measure.dim or cube.p != measure.p:
        raise IndexOutOfRange("cube does not match the measure's dimension / division number")
    return path_measure(measure, _path_key(measure, cube.path.steps))


def index_measure(measure: BernoulliMeasure, generation: int, k: Sequence[int]) -> Fraction:
    """Mass of the generation-``n`` cube with integer lattice index ``k``."""
    p, size = measure.p, measure.p**generation
    local = [kj % size for kj in k]
    flat = []
    for depth in range(generation):
        scale = p ** (generation - depth - 1)
        idx = 0
        for kj in local:
            idx = idx * p + (kj // scale) % p
        flat.append(idx)
    return path_measure(measure, flat)


def point_path(measure: BernoulliMeasure, x: Sequence, n: int) -> PAdicPath:
    """Path of the generation-``n`` cube containing ``x`` (reduced into ``Q_0``).

    Each step applies the shift ``t -> p t + q - floor(p (t + 1/2))``
    coordinatewise and records the digit it removed.
    """
    p, q = measure.p, measure.q
    x = as_vector(x)
    if len(x) != measure.dim:
        raise IndexOutOfRange("point has the wrong dimension")
    # u = x + 1/2 reduced to [0, 1)
    u = [(t + HALF) - math.floor(t + HALF) for t in x]
    steps = []
    for _ in range(n):
        digits = [math.floor(p * uj) for uj in u]
        steps.append(tuple(d - q for d in digits))
        u = [p * uj - d for uj, d in zip(u, digits)]
    return PAdicPath(measure.dim, p, tuple(steps))
