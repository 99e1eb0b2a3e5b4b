import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernoulli_adc import BernoulliSpec, build_adc_system, sample_coefficients, solve_affine, validate_spec
from bernoulli_adc.coeffs import epsilon_line, epsilon_measure, normalization_row
from bernoulli_adc.errors import OutOfOpenBox
from bernoulli_adc.linalg import SingularSystemError, nullspace, primitive_integer, solve


def enumerated_rows(n):
    """Slab rows by counting labels with nu_1 = i and |nu| = k."""
    rows = {}
    for i in (0, 1):
        counts = [0] * (n + 1)
        for nu in itertools.product((-1, 0, 1), repeat=n):
            if nu[0] == i:
                counts[sum(1 for v in nu if v)] += 1
        rows[i] = tuple(F(c) for c in counts)
    return rows[0], rows[1]


def small_parameters(param, draw_ints):
    scale = 2 * 3**param.dim * sum(abs(x) for v in param.basis for x in v)
    return tuple(F(k, 1000 * scale) for k in draw_ints)


@pytest.mark.parametrize("n", range(1, 7))
def test_rows_match_label_enumeration(n):
    system = build_adc_system(n)
    assert system.rows == enumerated_rows(n)
    assert system.rhs == (F(1, 3), F(1, 3))


def test_small_systems():
    assert build_adc_system(2).rows == ((1, 2, 0), (0, 1, 2))
    assert build_adc_system(1).rows == ((1, 0), (0, 1))
    assert build_adc_system(3).rows == ((1, 4, 4, 0), (0, 1, 4, 4))


@pytest.mark.parametrize("n", range(1, 7))
def test_rows_imply_normalization(n):
    center, side = build_adc_system(n).rows
    assert tuple(a + 2 * b for a, b in zip(center, side)) == normalization_row(n)


def test_planar_line():
    param = solve_affine(build_adc_system(2))
    assert param.particular == (F(1, 9),) * 3
    assert param.basis == ((-4, 2, -1),)
    assert param.point((F(1, 72),)) == (F(1, 18), F(5, 36), F(7, 72))
    assert param.point((F(1, 72),)) == epsilon_line(F(1, 72))


def test_one_dimension_is_rigid():
    param = solve_affine(build_adc_system(1))
    assert param.basis == ()
    assert sample_coefficients(param, ()).coefficients == (F(1, 3), F(1, 3))


@pytest.mark.parametrize("n", range(2, 7))
def test_parametrization_structure(n):
    system = build_adc_system(n)
    param = solve_affine(system)
    assert len(param.basis) == n - 1
    assert system.satisfied_by(param.particular)
    for v in param.basis:
        assert all(sum(c * x for c, x in zip(row, v)) == 0 for row in system.rows)
        assert all(x.denominator == 1 for x in v)
        assert next(x for x in v if x) < 0
    assert len(nullspace([list(v) for v in param.basis], n + 1)) == (n + 1) - (n - 1)


def test_sample_examples():
    param = solve_affine(build_adc_system(2))
    m = sample_coefficients(param, (F(1, 72),))
    assert m.coefficients == (F(1, 18), F(5, 36), F(7, 72))
    assert sample_coefficients(param, (F(0),)).is_uniform
    with pytest.raises(OutOfOpenBox) as info:
        sample_coefficients(param, (F(1, 36),))
    assert info.value.index == 0 and info.value.value == 0
    assert info.value.to_dict() == {
        "error": "OutOfOpenBox",
        "message": str(info.value),
        "index": 0,
        "value": "0",
    }
    with pytest.raises(OutOfOpenBox) as info:
        sample_coefficients(param, (F(-1, 18),))
    assert info.value.index == 1 and info.value.value == 0


def test_epsilon_interval_endpoints():
    for eps in (F(-1, 18), F(1, 36)):
        with pytest.raises(OutOfOpenBox):
            epsilon_measure(eps)
    epsilon_measure(F(-1, 19))
    epsilon_measure(F(1, 37))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(-1000, 1000), min_size=n - 1, max_size=n - 1))))
def test_sampled_points_are_valid_and_satisfy_rows(data):
    n, ints = data
    system = build_adc_system(n)
    param = solve_affine(system)
    m = sample_coefficients(param, small_parameters(param, ints))
    assert system.satisfied_by(m.coefficients)
    assert validate_spec(BernoulliSpec.length_class(m.coefficients)) == m
    assert sum(m.probs) == 1


def test_linalg_helpers():
    assert tuple(primitive_integer((F(2, 3), F(-4, 3), 0))) == (1, -2, 0)
    assert tuple(primitive_integer((F(-1, 2), F(1, 4)))) == (2, -1)
    assert list(solve([[2, 1], [1, 3]], [3, 5])) == [F(4, 5), F(7, 5)]
    with pytest.raises(SingularSystemError):
        solve([[1, 2], [2, 4]], [1, 2])
