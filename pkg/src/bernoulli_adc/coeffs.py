"""Length-class coefficients whose measure balances every third-slab.

For ``p = 3`` and ``p_nu = a_{|nu|}``, asking each slab ``{nu_1 = i}`` of the
first generation to carry mass exactly 1/3 gives two linear equations in
``(a_0, ..., a_N)``.  Their solution set is an affine subspace of dimension
``N - 1`` through the uniform point; the admissible coefficients are the
part of it inside the open unit box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import MeasureError, OutOfOpenBox
from .measure import BernoulliMeasure, BernoulliSpec, normalization_weights, validate_spec
from .rational import as_vector

THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class ConstraintSystem:
    dim: int
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def residuals(self, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum(c * x for c, x in zip(row, a)) - b for row, b in zip(self.rows, self.rhs))

    def satisfied_by(self, a: Sequence[Fraction]) -> bool:
        return all(r == 0 for r in self.residuals(a))


@dataclass(frozen=True)
class SolutionParametrization:
    """``particular + sum_i t_i basis_i`` spans the solution set."""

    dim: int
    particular: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    def point(self, t: Sequence) -> tuple[Fraction, ...]:
        t = as_vector(t)
        if len(t) != len(self.basis):
            raise MeasureError(f"expected {len(self.basis)} parameters, got {len(t)}")
        return tuple(
            x + sum((ti * v[k] for ti, v in zip(t, self.basis)), Fraction(0))
            for k, x in enumerate(self.particular)
        )


def build_adc_system(dim: int) -> ConstraintSystem:
    """The two slab-balance rows over ``(a_0, ..., a_N)``.

    Among labels with ``nu_1 = 0`` there are ``2^k C(N-1, k)`` of length
    ``k``; among those with ``nu_1 = 1`` the same count has length ``k + 1``.
    """
    if dim < 1:
        raise MeasureError("dimension must be >= 1")
    w = [Fraction(2**k * math.comb(dim - 1, k)) for k in range(dim)]
    zero = Fraction(0)
    center_row = tuple(w) + (zero,)
    side_row = (zero,) + tuple(w)
    return ConstraintSystem(dim, (center_row, side_row), (THIRD, THIRD))


def normalization_row(dim: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(w) for w in normalization_weights(dim))


def solve_affine(system: ConstraintSystem) -> SolutionParametrization:
    n = system.dim
    uniform = tuple(Fraction(1, 3**n) for _ in range(n + 1))
    particular = linalg.particular_solution(system.rows, system.rhs)
    if particular is None:
        raise MeasureError("constraint system is inconsistent")
    # the uniform point is the canonical anchor
    if not system.satisfied_by(uniform):
        raise MeasureError("uniform point does not satisfy the system")
    # Primitive integer directions with a negative leading entry, so that
    # increasing t drains the center coefficient a_0 (the planar line becomes
    # (1/9 - 4t, 1/9 + 2t, 1/9 - t)).
    basis = [
        tuple(-x for x in linalg.primitive_integer(v)) for v in linalg.nullspace(system.rows, n + 1)
    ]
    return SolutionParametrization(n, uniform, tuple(basis))


def sample_coefficients(param: SolutionParametrization, t: Sequence) -> BernoulliMeasure:
    """Coefficients at parameter ``t``, validated as a measure.

    Raises :class:`OutOfOpenBox` naming the first ``a_k`` outside ``(0, 1)``.
    """
    a = param.point(t)
    for k, v in enumerate(a):
        if not 0 < v < 1:
            raise OutOfOpenBox(f"a_{k} = {v} is outside the open interval (0, 1)", k, v)
    return validate_spec(BernoulliSpec.length_class(a))


def epsilon_line(eps) -> tuple[Fraction, Fraction, Fraction]:
    """Planar coefficients ``(1/9 - 4e, 1/9 + 2e, 1/9 - e)``."""
    e = Fraction(eps)
    ninth = Fraction(1, 9)
    return (ninth - 4 * e, ninth + 2 * e, ninth - e)


def epsilon_measure(eps) -> BernoulliMeasure:
    a = epsilon_line(eps)
    for k, v in enumerate(a):
        if not 0 < v < 1:
            raise OutOfOpenBox(f"a_{k} = {v} is outside (0, 1); need -1/18 < eps < 1/36", k, v)
    return validate_spec(BernoulliSpec.length_class(a))
