"""Exact rational helpers shared by every module.

All exact quantities are :class:`fractions.Fraction`, which is always kept in
lowest terms with a positive denominator.  Values cross text boundaries only
as ``"num/den"`` strings (integers are written without a denominator).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "as_fraction",
    "as_vector",
    "format_fraction",
    "format_vector",
    "parse_fraction",
    "parse_vector",
    "is_p_adic",
    "is_grid_rational",
    "p_adic_order",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding error into
    quantities that are supposed to be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int) or isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    if hasattr(value, "__index__"):
        return Fraction(int(value))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal literal {text!r} is not allowed; write num/den")
    return Fraction(text)


def format_fraction(value: Fraction) -> str:
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_vector(text: str, sep: str = ",") -> tuple[Fraction, ...]:
    return tuple(parse_fraction(part) for part in text.split(sep))


def format_vector(values: Sequence[Fraction], sep: str = ";") -> str:
    return sep.join(format_fraction(v) for v in values)


def p_adic_order(value: Fraction, p: int) -> int | None:
    """Smallest ``m`` with ``value * p**m`` an integer, or None if none exists."""
    den = value.denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    return m if den == 1 else None


def is_p_adic(value: Fraction, p: int) -> bool:
    return p_adic_order(value, p) is not None


def is_grid_rational(t: Fraction, p: int) -> bool:
    """True when ``t + 1/2`` has a finite base-``p`` expansion."""
    return is_p_adic(as_fraction(t) + Fraction(1, 2), p)
