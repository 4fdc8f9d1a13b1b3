"""Exact rational values and their text codecs.

``Rational`` is :class:`fractions.Fraction`: arbitrary precision, always
reduced, sign on the numerator. No value ever passes through a binary float.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_DECIMAL = re.compile(r"(-?)(\d+)(?:[.,](\d+))?")
_FRACTION = re.compile(r"(-?\d+)/(\d+)")
_MIXED = re.compile(r"(\d+) (-?\d+)/(\d+)")


class QuantityError(ValueError):
    """Raised for text that is not a decimal, fraction or mixed number."""


def parse_quantity(text: str) -> Fraction:
    """Parse ``"3,625"``, ``"3.625"``, ``"29/8"`` or ``"3 5/8"`` exactly.

    Both ``.`` and ``,`` are accepted as the decimal separator.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    s = text.strip()

    m = _DECIMAL.fullmatch(s)
    if m:
        sign, whole, digits = m.groups()
        value = Fraction(int(whole))
        if digits:
            value += Fraction(int(digits), 10 ** len(digits))
        return -value if sign else value

    m = _FRACTION.fullmatch(s)
    if m:
        return _fraction(int(m.group(1)), int(m.group(2)), text)

    m = _MIXED.fullmatch(s)
    if m:
        return int(m.group(1)) + _fraction(int(m.group(2)), int(m.group(3)), text)

    raise QuantityError(f"malformed quantity: {text!r}")


def _fraction(p: int, q: int, text: str) -> Fraction:
    if q == 0:
        raise QuantityError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and quantity strings; refuse floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not quantities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_quantity(value)
    raise TypeError(
        f"expected an exact quantity, got {type(value).__name__}; "
        "quantize floats with parse_quantity first"
    )


def format_rational(r: Fraction, style: str = "fraction", digits: int = 6) -> str:
    """Render ``r`` as ``"p/q"``, a mixed number, or a rounded decimal.

    The mixed style writes ``"W"``, ``"W p/q"``, or ``"p/q"`` when the whole
    part is zero; negative non-integers fall back to ``"p/q"``. The decimal
    style rounds half away from zero to ``digits`` places and always uses
    ``.`` as separator.
    """
    r = Fraction(r)
    if style == "fraction":
        return f"{r.numerator}/{r.denominator}"
    if style == "mixed":
        if r.denominator == 1:
            return str(r.numerator)
        if r < 0:
            return f"{r.numerator}/{r.denominator}"
        whole, rest = divmod(r.numerator, r.denominator)
        frac = f"{rest}/{r.denominator}"
        return frac if whole == 0 else f"{whole} {frac}"
    if style == "decimal":
        if digits < 1:
            raise ValueError("digits must be >= 1")
        scale = 10**digits
        scaled = abs(r) * scale
        units, rem = divmod(scaled.numerator, scaled.denominator)
        if 2 * rem >= scaled.denominator:
            units += 1
        whole, frac = divmod(units, scale)
        sign = "-" if r < 0 and units else ""
        return f"{sign}{whole}.{frac:0{digits}d}"
    raise ValueError(f"unknown style {style!r}")
