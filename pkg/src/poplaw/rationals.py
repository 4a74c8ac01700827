"""Parsing and formatting of exact rationals.

All probabilities in this package are `fractions.Fraction` values. Accepted
input spellings are integers, "p/q" strings, and decimal strings such as
"0.3" (converted exactly, never through binary floating point). Floats are
rejected: a float has already lost the author's intended value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvariantError


def parse_rational(value) -> Fraction:
    """Convert an int, Fraction, "p/q" string or decimal string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvariantError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvariantError(
            f"refusing float {value!r}: pass a string like \"3/10\" or \"0.3\" for exactness"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvariantError(f"not a rational: {value!r}") from exc
    raise InvariantError(f"not a rational: {value!r}")


def format_rational(value: Fraction):
    """Render a Fraction as an int (when integral) or a "p/q" string."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, digits: int) -> str:
    """Render a Fraction as a decimal string with `digits` places, round half to even."""
    if digits < 0:
        raise InvariantError("digits must be >= 0")
    scaled = value * 10**digits
    whole = scaled.numerator // scaled.denominator
    remainder2 = 2 * (scaled.numerator - whole * scaled.denominator)
    if remainder2 > scaled.denominator or (remainder2 == scaled.denominator and whole % 2):
        whole += 1
    sign = "-" if whole < 0 else ""
    text = str(abs(whole)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
