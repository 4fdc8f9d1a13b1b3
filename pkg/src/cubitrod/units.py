"""Anthropometric units and numeral-preserving rescaling."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .measurement import Reading
from .numerics import as_rational


class Unit(enum.Enum):
    FINGER = "finger"
    PALM = "palm"
    FIST = "fist"
    SHORT_CUBIT = "short_cubit"
    ROYAL_CUBIT = "royal_cubit"
    MILLIMETER = "millimeter"

    @classmethod
    def parse(cls, name) -> Unit:
        if isinstance(name, Unit):
            return name
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(u.value for u in cls)
            raise ValueError(f"unknown unit {name!r}; choose from {choices}") from None

    def fingers_per_unit(self, finger_mm=None) -> Fraction:
        if self is Unit.MILLIMETER:
            if finger_mm is None:
                raise ValueError("millimeter conversions need finger_mm")
            finger_mm = as_rational(finger_mm)
            if finger_mm <= 0:
                raise ValueError("finger_mm must be positive")
            return 1 / finger_mm
        return _FINGERS[self]


_FINGERS = {
    Unit.FINGER: Fraction(1),
    Unit.PALM: Fraction(4),
    Unit.FIST: Fraction(6),
    Unit.SHORT_CUBIT: Fraction(24),
    Unit.ROYAL_CUBIT: Fraction(28),
}


def convert(value, from_unit, to_unit, finger_mm=None) -> Fraction:
    """Exact conversion, pivoting through the finger.

    ``finger_mm`` is required whenever either side is millimeters.
    """
    value = as_rational(value)
    src, dst = Unit.parse(from_unit), Unit.parse(to_unit)
    if src is dst:
        return value
    return value * src.fingers_per_unit(finger_mm) / dst.fingers_per_unit(finger_mm)


@dataclass(frozen=True)
class ScaledQuantity:
    reading: Reading
    unit: Unit

    def magnitude(self, unit=Unit.FINGER, finger_mm=None) -> Fraction:
        return convert(self.reading.value, self.unit, unit, finger_mm)

    def __str__(self) -> str:
        return f"{self.reading} {self.unit.value}"


def apply_scale(q: ScaledQuantity, target_unit) -> ScaledQuantity:
    """Keep the numerals, swap the unit: 3 5/8 finger -> 3 5/8 royal_cubit."""
    return ScaledQuantity(q.reading, Unit.parse(target_unit))


def scale_factor(q: ScaledQuantity, target_unit, finger_mm=None) -> Fraction:
    """Ratio of physical sizes after and before :func:`apply_scale`."""
    return convert(1, target_unit, q.unit, finger_mm)
