"""Rational scalars and parsing helpers.

All exact scalars are :class:`fractions.Fraction`; ``Rational`` is an alias
kept for readability in signatures.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

Rational = Fraction

__all__ = ["Rational", "as_rational", "parse_rational", "format_rational"]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through binary floats.

    Accepts ints, Fractions and strings such as ``"3/2"`` or ``"-7"``.
    Floats are rejected because they would silently smuggle rounding error
    into an exact computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if any(ch in text for ch in ".eE") and "/" not in text:
        # decimal literals are exact in base ten, Fraction handles them
        return Fraction(text)
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
