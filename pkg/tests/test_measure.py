import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernoulli_adc import BernoulliSpec, PAdicCube, PAdicPath, cube_measure, point_path, validate_spec
from bernoulli_adc.errors import (
    BadDivisionNumber,
    IndexOutOfRange,
    NonPositiveProbability,
    NotNormalized,
)
from bernoulli_adc.measure import cell_probability, child_labels, index_measure, path_measure

from conftest import cell_mass, label_prob


def test_length_class_table(eps72):
    assert eps72.dim == 2 and eps72.p == 3
    assert len(eps72.probs) == 9
    assert sum(eps72.probs) == 1
    assert cell_probability(eps72, (0, 0)) == F(1, 18)
    assert cell_probability(eps72, (1, 0)) == F(5, 36)
    assert cell_probability(eps72, (0, -1)) == F(5, 36)
    assert cell_probability(eps72, (-1, 1)) == F(7, 72)
    assert eps72.a_min == F(1, 18)
    assert not eps72.is_uniform


def test_flat_index_matches_label_order(eps72):
    for i, nu in enumerate(child_labels(2, 3)):
        assert eps72.flat_index(nu) == i
        assert eps72.probs[i] == label_prob(eps72, nu)


def test_uniform_spec(uniform2):
    assert uniform2.is_uniform
    assert set(uniform2.probs) == {F(1, 9)}


def test_general_mode_p5():
    labels = child_labels(1, 5)
    probs = dict(zip(labels, (F(1, 10), F(2, 10), F(4, 10), F(2, 10), F(1, 10))))
    m = validate_spec(BernoulliSpec.general(1, 5, probs))
    assert m.q == 2
    assert index_measure(m, 1, (2,)) == F(2, 5)
    assert index_measure(m, 2, (12,)) == F(4, 25)


def test_validation_errors():
    with pytest.raises(NotNormalized):
        validate_spec(BernoulliSpec.length_class((F(1, 9), F(1, 9), F(1, 8))))
    with pytest.raises(NonPositiveProbability):
        validate_spec(BernoulliSpec.length_class((F(0), F(1, 6), F(1, 6))))
    with pytest.raises(NonPositiveProbability):
        validate_spec(BernoulliSpec.length_class((F(1, 3), F(1, 6), F(-1, 12) + F(1, 24))))
    with pytest.raises(BadDivisionNumber):
        validate_spec(BernoulliSpec.uniform(2, p=4))
    with pytest.raises(BadDivisionNumber):
        validate_spec(BernoulliSpec.uniform(2, p=1))
    labels = child_labels(2, 3)
    missing = {nu: F(1, 8) for nu in labels[:8]}
    # an absent label means probability zero
    with pytest.raises(NonPositiveProbability):
        validate_spec(BernoulliSpec.general(2, 3, missing))


def test_floats_rejected():
    with pytest.raises(TypeError):
        validate_spec(BernoulliSpec.length_class((1 / 18, 5 / 36, 7 / 72)))


def test_root_cube_has_unit_mass(eps72):
    root = PAdicCube.root(2)
    assert cube_measure(eps72, root) == 1
    assert root.lower() == (F(-1, 2), F(-1, 2))
    assert root.side == 1


def test_spec_example_cubes(eps72):
    c = PAdicCube(PAdicPath(2, 3, ((1, 0),)))
    assert cube_measure(eps72, c) == F(5, 36)
    c = PAdicCube(PAdicPath(2, 3, ((0, 0), (1, 1))))
    assert cube_measure(eps72, c) == F(1, 18) * F(7, 72)
    assert cube_measure(eps72, c) == F(7, 1296)


def test_lattice_shift_is_periodic(eps72):
    path = PAdicPath(2, 3, ((1, -1), (0, 1)))
    base = cube_measure(eps72, PAdicCube(path))
    for z in itertools.product((-2, 0, 3), repeat=2):
        shifted = PAdicCube(path, z)
        assert cube_measure(eps72, shifted) == base
        assert shifted.lower() == tuple(a + b for a, b in zip(PAdicCube(path).lower(), z))


def test_index_round_trip():
    for k in itertools.product(range(9), repeat=2):
        cube = PAdicCube.from_index(2, 3, 2, k)
        assert cube.index() == k
        assert cube.lower() == tuple(F(-1, 2) + F(kj, 9) for kj in k)


def test_index_out_of_range(eps72):
    # lattice indices wrap periodically; labels outside {-q..q} are rejected
    assert index_measure(eps72, 2, (9, -1)) == index_measure(eps72, 2, (0, 8))
    with pytest.raises(IndexOutOfRange):
        PAdicPath(2, 3, ((0,),))
    with pytest.raises(IndexOutOfRange):
        PAdicPath(2, 3, ((2, 0),))


def test_recursion_exhaustive_to_generation_3(eps72):
    cubes = [PAdicCube.root(2)]
    for _ in range(3):
        nxt = []
        for cube in cubes:
            kids = list(cube.children())
            assert len(kids) == 9
            assert sum(cube_measure(eps72, k) for k in kids) == cube_measure(eps72, cube)
            nxt.extend(kids)
        cubes = nxt
    assert len(cubes) == 729


def test_index_measure_matches_digit_oracle(eps72_3d):
    for k in itertools.product(range(9), repeat=3):
        if sum(k) % 5:
            continue
        assert index_measure(eps72_3d, 2, k) == cell_mass(eps72_3d, 2, k)


def test_path_measure_products(eps72):
    assert path_measure(eps72, []) == 1
    flat = [4, 0, 8, 1]
    expected = F(1)
    for i in flat:
        expected *= eps72.probs[i]
    assert path_measure(eps72, flat) == expected


def test_point_path_examples(eps72):
    assert point_path(eps72, (F(1, 3), F(0)), 2).steps == ((1, 0), (0, 0))
    assert point_path(eps72, (F(0), F(0)), 3).steps == ((0, 0),) * 3
    assert point_path(eps72, (F(-1, 2), F(-1, 2)), 2).steps == ((-1, -1), (-1, -1))
    # periodic reduction
    assert point_path(eps72, (F(1, 2), F(3, 2)), 2).steps == ((-1, -1), (-1, -1))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-1, 1), st.integers(-1, 1)), min_size=1, max_size=5),
    st.sampled_from([(1, 1), (-1, 1), (1, -1), (-1, -1)]),
    st.booleans(),
)
def test_reflection_and_permutation_symmetry(steps, flip, swap):
    m = validate_spec(BernoulliSpec.length_class((F(1, 18), F(5, 36), F(7, 72))))
    sx, sy = flip
    new = []
    for a, b in steps:
        a, b = a * sx, b * sy
        new.append((b, a) if swap else (a, b))
    assert cube_measure(m, PAdicCube(PAdicPath(2, 3, tuple(steps)))) == cube_measure(
        m, PAdicCube(PAdicPath(2, 3, tuple(new)))
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 3**n - 1), st.integers(0, 3**n - 1))))
def test_point_path_lands_in_its_cube(data):
    m = validate_spec(BernoulliSpec.uniform(2))
    n, i, j = data
    cube = PAdicCube.from_index(2, 3, n, (i, j))
    x = tuple(lo + cube.side / 3 for lo in cube.lower())
    path = point_path(m, x, n)
    assert PAdicCube(path).lower() == cube.lower()
    assert PAdicCube(path).contains(x)
