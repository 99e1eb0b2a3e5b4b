"""Entropy, dimension and density trajectories of Bernoulli products.

Cube masses are exact rationals; logarithms are taken only at the end, as
``log(numerator) - log(denominator)``, so the uniform measure gives log
densities that are exactly zero.

Sampling: a point drawn from ``m_N`` picks each generation's child
uniformly; a point drawn from ``mu`` picks child ``nu`` with probability
``p_nu``.  Sample ``i`` of an experiment with base seed ``s`` uses the
stream ``s + i``, so results do not depend on how samples are scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import MeasureError
from .measure import BernoulliMeasure, PAdicCube, PAdicPath, point_path

LEBESGUE = "lebesgue"
MU = "mu"
LAWS = (LEBESGUE, MU)


def exact_log(value: Fraction) -> float:
    value = Fraction(value)
    if value <= 0:
        raise ValueError("log of a nonpositive number")
    if value == 1:
        return 0.0
    return math.log(value.numerator) - math.log(value.denominator)


def entropy(measure: BernoulliMeasure) -> float:
    """``h = -sum p_nu log p_nu``."""
    return -math.fsum(float(w) * exact_log(w) for w in measure.probs)


def dimension(measure: BernoulliMeasure) -> float:
    """``h / log p``; equals ``N`` only for the uniform measure."""
    if measure.is_uniform:
        return float(measure.dim)
    return entropy(measure) / math.log(measure.p)


def expected_log(measure: BernoulliMeasure, law: str) -> float:
    """Mean of the one-step log mass ratio ``log p_nu`` under ``law``."""
    if law == LEBESGUE:
        return math.fsum(exact_log(w) for w in measure.probs) / len(measure.probs)
    if law == MU:
        return -entropy(measure)
    raise MeasureError(f"unknown law {law!r}; expected one of {LAWS}")


def _law_weights(measure: BernoulliMeasure, law: str) -> np.ndarray:
    if law == LEBESGUE:
        return np.full(len(measure.probs), 1.0 / len(measure.probs))
    if law == MU:
        w = np.array([float(x) for x in measure.probs])
        return w / w.sum()
    raise MeasureError(f"unknown law {law!r}; expected one of {LAWS}")


def sample_flat_path(measure: BernoulliMeasure, law: str, n: int, seed: int) -> list[int]:
    rng = np.random.default_rng(seed)
    return rng.choice(len(measure.probs), size=n, p=_law_weights(measure, law)).tolist()


def _flat_to_path(measure: BernoulliMeasure, flat: Sequence[int]) -> PAdicPath:
    labels = measure.labels
    return PAdicPath(measure.dim, measure.p, tuple(labels[i] for i in flat))


def sample_path(measure: BernoulliMeasure, law: str, n: int, seed: int) -> PAdicPath:
    return _flat_to_path(measure, sample_flat_path(measure, law, n, seed))


def sample_point(measure: BernoulliMeasure, law: str, n: int, seed: int) -> tuple[Fraction, ...]:
    """Center of a generation-``n`` cube drawn under ``law``."""
    cube = PAdicCube(sample_path(measure, law, n, seed))
    half = cube.side / 2
    return tuple(lo + half for lo in cube.lower())


def log_sums(measure: BernoulliMeasure, flat: Sequence[int]) -> list[float]:
    """``S_k = log mu(Q_k)`` for ``k = 0..n`` along a path."""
    mass = Fraction(1)
    out = [0.0]
    for i in flat:
        mass *= measure.probs[i]
        out.append(exact_log(mass))
    return out


def _log_densities(measure: BernoulliMeasure, flat: Sequence[int]) -> list[float]:
    vol = measure.p**measure.dim
    mass = Fraction(1)
    out = [0.0]
    for i in flat:
        mass *= measure.probs[i] * vol
        out.append(exact_log(mass))
    return out


def _tail_slope(values: Sequence[float]) -> float:
    n_max = len(values) - 1
    start = n_max // 2
    xs = np.arange(start, n_max + 1, dtype=float)
    ys = np.asarray(values[start:], dtype=float)
    if len(xs) < 2:
        return 0.0
    return float(np.polyfit(xs, ys, 1)[0])


@dataclass(frozen=True)
class TrajectorySample:
    """``values[n] = log(mu(Q_n(x)) / m_N(Q_n(x)))`` for ``n = 0..n_max``."""

    point: tuple[Fraction, ...]
    values: tuple[float, ...]
    slope_estimate: float
    log_sums: tuple[float, ...] = field(default=(), repr=False)


def density_trajectory(measure: BernoulliMeasure, x: Sequence, n_max: int) -> TrajectorySample:
    """Log density of ``mu`` against Lebesgue along the cubes shrinking to ``x``.

    The slope is a least-squares fit over the second half of the trajectory.
    """
    path = point_path(measure, x, n_max)
    flat = [measure.flat_index(nu) for nu in path.steps]
    values = _log_densities(measure, flat)
    return TrajectorySample(
        tuple(Fraction(t) for t in x),
        tuple(values),
        _tail_slope(values),
        tuple(log_sums(measure, flat)),
    )


@dataclass(frozen=True)
class DistributionStats:
    law: str
    samples: int
    depth: int
    seed: int
    mean: float
    variance: float
    target: float
    tolerance: float
    passed: bool
    rule: str = "|mean - target| <= 3 * stddev / sqrt(M) + 1e-12 * max(1, |target|)"

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "samples": self.samples,
            "depth": self.depth,
            "seed": self.seed,
            "mean": self.mean,
            "variance": self.variance,
            "target": self.target,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "rule": self.rule,
        }


def normalized_log_sums(measure: BernoulliMeasure, law: str, samples: int, depth: int, seed: int) -> list[float]:
    """``S_n / n`` for ``samples`` independent paths of length ``depth``."""
    if samples < 1 or depth < 1:
        raise MeasureError("samples and depth must be positive")
    out = []
    for i in range(samples):
        flat = sample_flat_path(measure, law, depth, seed + i)
        mass = Fraction(1)
        for k in flat:
            mass *= measure.probs[k]
        out.append(exact_log(mass) / depth)
    return out


def lln_experiment(measure: BernoulliMeasure, law: str, samples: int, depth: int, seed: int = 0) -> DistributionStats:
    """Compare the empirical mean of ``S_n / n`` with its almost-sure limit."""
    values = normalized_log_sums(measure, law, samples, depth, seed)
    mean = math.fsum(values) / samples
    var = math.fsum((v - mean) ** 2 for v in values) / (samples - 1) if samples > 1 else 0.0
    target = expected_log(measure, law)
    tol = 3 * math.sqrt(var) / math.sqrt(samples) + 1e-12 * max(1.0, abs(target))
    return DistributionStats(law, samples, depth, seed, mean, var, target, tol, abs(mean - target) <= tol)


def slope_target(measure: BernoulliMeasure, law: str) -> float:
    """Limit slope ``N log p + E[X_1]`` of the log density under ``law``."""
    return measure.dim * math.log(measure.p) + expected_log(measure, law)


def trajectory_slopes(measure: BernoulliMeasure, law: str, samples: int, depth: int, seed: int = 0) -> list[float]:
    """Tail slopes of log-density trajectories through sampled points."""
    out = []
    for i in range(samples):
        flat = sample_flat_path(measure, law, depth, seed + i)
        out.append(_tail_slope(_log_densities(measure, flat)))
    return out


def slope_sign_rate(measure: BernoulliMeasure, law: str, samples: int, depth: int, seed: int = 0) -> float:
    """Fraction of sampled trajectories whose slope has the sign of its limit."""
    target = slope_target(measure, law)
    sign = math.copysign(1.0, target)
    if target == 0:
        raise MeasureError("the uniform measure has zero limiting slope")
    slopes = trajectory_slopes(measure, law, samples, depth, seed)
    return sum(1 for s in slopes if s * sign > 0) / samples
