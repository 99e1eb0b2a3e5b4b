"""Shared fixtures and brute-force oracles.

The oracles never call the package's recursion: they enumerate generation-g
cells directly and multiply the per-step probabilities digit by digit.
"""
import functools
import itertools
from fractions import Fraction as F

import pytest

from bernoulli_adc import BernoulliSpec, validate_spec
from bernoulli_adc.coeffs import epsilon_measure

EPS = F(1, 72)


@pytest.fixture(scope="session")
def eps72():
    return epsilon_measure(EPS)


@pytest.fixture(scope="session")
def uniform2():
    return validate_spec(BernoulliSpec.uniform(2))


@pytest.fixture(scope="session")
def uniform3():
    return validate_spec(BernoulliSpec.uniform(3))


@pytest.fixture(scope="session")
def eps72_3d():
    # a non-uniform point of the N=3 solution set
    from bernoulli_adc.coeffs import build_adc_system, sample_coefficients, solve_affine

    param = solve_affine(build_adc_system(3))
    return sample_coefficients(param, (F(1, 400), F(-1, 500)))


@functools.lru_cache(maxsize=None)
def _labels(dim, p):
    q = (p - 1) // 2
    return {nu: i for i, nu in enumerate(itertools.product(range(-q, q + 1), repeat=dim))}


def label_prob(measure, nu):
    return measure.probs[_labels(measure.dim, measure.p)[tuple(nu)]]


def cell_mass(measure, g, k):
    """Mass of the generation-g cell with lattice index k, digit by digit."""
    p, q = measure.p, (measure.p - 1) // 2
    mass = F(1)
    for level in range(g):
        shift = p ** (g - 1 - level)
        nu = tuple((kj // shift) % p - q for kj in k)
        mass *= label_prob(measure, nu)
    return mass


def brute_box(measure, lo, hi, g):
    """Sum of generation-g cells in the half-open box (endpoints on that grid)."""
    p = measure.p
    size = p**g
    ranges = []
    for a, b in zip(lo, hi):
        ia, ib = (F(a) + F(1, 2)) * size, (F(b) + F(1, 2)) * size
        assert ia.denominator == 1 and ib.denominator == 1, "box not on the generation-g grid"
        ranges.append(range(int(ia), int(ib)))
    total = F(0)
    for m in itertools.product(*ranges):
        total += cell_mass(measure, g, tuple(x % size for x in m))
    return total


def all_cells(measure, g):
    """Yield (lower corner, side, mass) for every generation-g cell of Q_0."""
    size = measure.p**g
    side = F(1, size)
    for k in itertools.product(range(size), repeat=measure.dim):
        yield tuple(F(-1, 2) + kj * side for kj in k), side, cell_mass(measure, g, k)


def brute_box_enclosure(measure, lo, hi, g):
    """(inner, outer) generation-g cell sums for an arbitrary rational box."""
    import math

    size = measure.p**g
    inner_r, outer_r = [], []
    for a, b in zip(lo, hi):
        ia, ib = (F(a) + F(1, 2)) * size, (F(b) + F(1, 2)) * size
        inner_r.append(range(math.ceil(ia), math.floor(ib)))
        outer_r.append(range(math.floor(ia), math.ceil(ib)))

    def total(ranges):
        return sum(
            (cell_mass(measure, g, tuple(x % size for x in m)) for m in itertools.product(*ranges)),
            F(0),
        )

    return total(inner_r), total(outer_r)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label, passed, detail):
        line = f"criterion {label}: {'PASS' if passed else 'FAIL'} | {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
