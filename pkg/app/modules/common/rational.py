from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple

import sympy

RationalLike = int | str | Fraction


def to_fraction(value: RationalLike | Rational | sympy.Rational) -> Fraction:
    """Coerce ints, fractions, sympy rationals and "p/q" strings to Fraction.

    Floats are rejected: every quantity that reaches the exact layer has to be
    written as a rational by the caller.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def to_fractions(values: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_fractions(values: Sequence[Fraction]) -> List[str]:
    return [format_fraction(v) for v in values]


def to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Evaluate sum(coeffs[k] * x**k) exactly."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])
