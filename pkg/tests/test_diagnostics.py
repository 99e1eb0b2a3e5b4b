import math
from fractions import Fraction as F

import mpmath
import pytest

from bernoulli_adc import PAdicCube, cube_measure, density_trajectory, dimension, entropy, expected_log, lln_experiment, sample_point
from bernoulli_adc.diagnostics import (
    LEBESGUE,
    MU,
    exact_log,
    log_sums,
    sample_flat_path,
    sample_path,
    slope_target,
    trajectory_slopes,
)
from bernoulli_adc.errors import MeasureError
from bernoulli_adc.measure import index_measure, point_path

SEED = 20190101


def mp_entropy(measure):
    mpmath.mp.dps = 50
    return -sum(mpmath.mpf(w.numerator) / w.denominator * mpmath.log(mpmath.mpf(w.numerator) / w.denominator) for w in measure.probs)


def test_entropy_against_high_precision(eps72):
    assert entropy(eps72) == pytest.approx(float(mp_entropy(eps72)), rel=1e-14)
    manual = -(
        4 * (7 / 72) * math.log(7 / 72) + 4 * (5 / 36) * math.log(5 / 36) + (1 / 18) * math.log(1 / 18)
    )
    assert entropy(eps72) == pytest.approx(manual, rel=1e-13)
    assert entropy(eps72) == pytest.approx(2.163692989324525, rel=1e-14)


def test_dimension(eps72, uniform2, uniform3):
    assert dimension(uniform2) == 2.0
    assert dimension(uniform3) == 3.0
    assert entropy(uniform2) == pytest.approx(2 * math.log(3), rel=1e-15)
    alpha = dimension(eps72)
    assert 0 < alpha < 2
    assert alpha == pytest.approx(1.96948, abs=1e-5)


def test_expected_logs(eps72, uniform2):
    lebesgue = expected_log(eps72, LEBESGUE)
    manual = (math.log(1 / 18) + 4 * math.log(5 / 36) + 4 * math.log(7 / 72)) / 9
    assert lebesgue == pytest.approx(manual, rel=1e-14)
    assert lebesgue == pytest.approx(-2.2344133046474632, rel=1e-14)
    assert 2 * math.log(3) + lebesgue < 0
    assert expected_log(eps72, MU) == pytest.approx(-entropy(eps72), rel=1e-12)
    assert expected_log(uniform2, LEBESGUE) == pytest.approx(-2 * math.log(3), rel=1e-15)
    assert slope_target(eps72, LEBESGUE) < 0 < slope_target(eps72, MU)
    with pytest.raises(MeasureError):
        expected_log(eps72, "counting")


def test_exact_log():
    assert exact_log(F(1)) == 0.0
    assert exact_log(F(1, 3**400)) == pytest.approx(-400 * math.log(3), rel=1e-14)
    with pytest.raises(ValueError):
        exact_log(F(0))


def test_sample_point_origin_and_golden(eps72):
    assert sample_point(eps72, MU, 0, SEED) == (F(0), F(0))
    path = sample_path(eps72, MU, 5, SEED)
    assert path.steps == ((1, 1), (1, 1), (-1, 0), (1, 1), (0, 1))
    assert sample_point(eps72, MU, 5, SEED) == (F(34, 81), F(112, 243))


def test_sampling_is_deterministic(eps72):
    assert sample_flat_path(eps72, MU, 30, 7) == sample_flat_path(eps72, MU, 30, 7)
    assert sample_flat_path(eps72, MU, 30, 7) != sample_flat_path(eps72, MU, 30, 8)


def test_uniform_laws_coincide(uniform2):
    for seed in range(5):
        assert sample_flat_path(uniform2, MU, 20, seed) == sample_flat_path(uniform2, LEBESGUE, 20, seed)


def test_mu_law_frequencies(eps72):
    draws = sample_flat_path(eps72, MU, 20000, 3)
    center = draws.count(4) / len(draws)
    assert center == pytest.approx(1 / 18, abs=4 * math.sqrt((1 / 18) * (17 / 18) / 20000))


def test_trajectory_uniform_is_zero(uniform2):
    traj = density_trajectory(uniform2, (F(1, 7), F(-2, 9)), 25)
    assert traj.values == (0.0,) * 26
    assert traj.slope_estimate == 0.0


def test_trajectory_values_match_exact_masses(eps72):
    x = (F(1, 7), F(-2, 9))
    traj = density_trajectory(eps72, x, 12)
    assert len(traj.values) == 13
    for n in (0, 3, 7, 12):
        mass = cube_measure(eps72, PAdicCube(point_path(eps72, x, n)))
        assert traj.values[n] == pytest.approx(math.log(float(mass * 9**n)), abs=1e-12)
        assert traj.values[n] == pytest.approx(n * 2 * math.log(3) + traj.log_sums[n], abs=1e-12)


def test_log_sums(eps72):
    sums = log_sums(eps72, [4, 4, 0])
    assert sums[2] == pytest.approx(2 * math.log(1 / 18))
    assert sums[3] == pytest.approx(2 * math.log(1 / 18) + math.log(7 / 72))


def test_lln_uniform_zero_variance(uniform2):
    for law in (LEBESGUE, MU):
        stats = lln_experiment(uniform2, law, 20, 15, seed=1)
        assert stats.variance == pytest.approx(0, abs=1e-28)
        assert stats.mean == pytest.approx(-2 * math.log(3), rel=1e-14)
        assert stats.passed


def test_lln_stats_record_rule(eps72):
    stats = lln_experiment(eps72, MU, 50, 20, seed=4)
    d = stats.to_dict()
    assert d["rule"].startswith("|mean - target| <= 3 * stddev / sqrt(M)")
    assert d["samples"] == 50 and d["depth"] == 20 and d["seed"] == 4
    assert stats == lln_experiment(eps72, MU, 50, 20, seed=4)


def test_lln_rejects_bad_sizes(eps72):
    with pytest.raises(MeasureError):
        lln_experiment(eps72, MU, 0, 10)


def test_slope_means_match_limits(eps72):
    leb = trajectory_slopes(eps72, LEBESGUE, 200, 40, seed=11)
    mu = trajectory_slopes(eps72, MU, 200, 40, seed=11)
    for slopes, law in ((leb, LEBESGUE), (mu, MU)):
        mean = sum(slopes) / len(slopes)
        sd = math.sqrt(sum((s - mean) ** 2 for s in slopes) / (len(slopes) - 1))
        target = slope_target(eps72, law)
        assert abs(mean - target) <= 3 * sd / math.sqrt(len(slopes))


def test_index_measure_consistent_with_paths(eps72):
    flat = sample_flat_path(eps72, MU, 6, 99)
    labels = eps72.labels
    k = [0, 0]
    for i in flat:
        k = [kj * 3 + (v + 1) for kj, v in zip(k, labels[i])]
    mass = F(1)
    for i in flat:
        mass *= eps72.probs[i]
    assert index_measure(eps72, 6, k) == mass
