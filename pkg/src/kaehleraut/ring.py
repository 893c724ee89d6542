"""Exact scalar arithmetic for the ground ring (the rationals).

Coefficients are plain :class:`fractions.Fraction` values, which are always
kept in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Coefficient = Fraction
CoefficientLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def coeff(value: CoefficientLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a coefficient.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_coeff(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def add(a: CoefficientLike, b: CoefficientLike) -> Fraction:
    return coeff(a) + coeff(b)


def mul(a: CoefficientLike, b: CoefficientLike) -> Fraction:
    return coeff(a) * coeff(b)


def neg(a: CoefficientLike) -> Fraction:
    return -coeff(a)


def inverse(a: CoefficientLike) -> Fraction:
    c = coeff(a)
    if c == 0:
        raise ZeroDivisionError("zero has no inverse")
    return 1 / c


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return Fraction(math.factorial(n))


def multinomial_weight(l) -> Fraction:
    """Integer prefactor ``prod_i |l_i|! / prod_ij l_ij!`` of a weight matrix.

    ``l`` is a :class:`~kaehleraut.kaehler.WeightMatrix` or any sequence of
    rows of nonnegative integers. Each row contributes a multinomial
    coefficient, so the result is always an integer.
    """
    rows = getattr(l, "entries", l)
    num = 1
    den = 1
    for row in rows:
        num *= math.factorial(sum(row))
        for e in row:
            den *= math.factorial(e)
    return Fraction(num // den)


def format_coeff(c: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    c = coeff(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_coeff(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed coefficient {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)
