"""Zero-free measuring and tracing with a graduated rod.

A segment is read by laying one end on a notch and the other on whichever
mark matches best; the notch need not be the rod's end. Tracing is the
inverse: pick a notch/mark pair whose distance equals the wanted length.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import as_rational, format_rational, parse_quantity
from .rods import Mark, RodSpec


class Unachievable(ValueError):
    """No notch/mark pair on the rod spans the requested length."""


class Direction(enum.Enum):
    # positions grow leftwards, so an end mark at a larger position lies to the left
    LEFT_TO_RIGHT = "left-to-right"
    RIGHT_TO_LEFT = "right-to-left"


@dataclass(frozen=True)
class Reading:
    """Whole fingers plus a proper fraction of a finger."""

    whole: int
    fraction: Fraction = Fraction(0)

    def __post_init__(self):
        if self.whole < 0:
            raise ValueError("whole part must be nonnegative")
        if not 0 <= self.fraction < 1:
            raise ValueError("fractional part must lie in [0, 1)")
        object.__setattr__(self, "fraction", Fraction(self.fraction))

    @property
    def value(self) -> Fraction:
        return self.whole + self.fraction

    @classmethod
    def from_value(cls, value) -> Reading:
        value = as_rational(value)
        if value < 0:
            raise ValueError(f"a reading cannot be negative: {value}")
        whole = math.floor(value)
        return cls(whole, value - whole)

    @classmethod
    def parse(cls, text: str) -> Reading:
        return cls.from_value(parse_quantity(text))

    def __str__(self) -> str:
        return format_rational(self.value, "mixed")


@dataclass(frozen=True)
class Alignment:
    start_notch: int
    end_mark: Mark
    direction: Direction
    measured_value: Fraction

    def sort_key(self):
        # simpler physical fraction first, then lower notch, then left-to-right
        return (
            self.end_mark.parts or 1,
            self.start_notch,
            self.direction is not Direction.LEFT_TO_RIGHT,
        )

    def to_dict(self) -> dict:
        m = self.end_mark
        return {
            "start_notch": self.start_notch,
            "finger": m.finger,
            "parts": m.parts,
            "index": m.index,
            "direction": self.direction.value,
        }

    def __str__(self) -> str:
        return f"notch {self.start_notch} -> {self.end_mark} ({self.direction.value})"


@dataclass(frozen=True)
class MeasurementResult:
    target: Fraction
    reading: Reading
    alignment: Alignment
    error_fingers: Fraction
    error_mm: Fraction


def _make_alignment(start: int, mark: Mark) -> Alignment:
    direction = Direction.RIGHT_TO_LEFT if mark.position > start else Direction.LEFT_TO_RIGHT
    return Alignment(start, mark, direction, abs(mark.position - start))


def alignments_for(rod: RodSpec, value) -> list[Alignment]:
    """Every notch/mark pair on ``rod`` whose distance is exactly ``value``.

    The result is ordered by the tie-breaking preference used by ``draw``.
    """
    value = as_rational(value)
    if value < 0:
        raise ValueError("length must be nonnegative")
    n = rod.finger_count
    whole = math.floor(value)
    frac = value - whole
    found = []
    if frac == 0:
        for a in range(n + 1):
            ends = (a,) if whole == 0 else (a - whole, a + whole)
            for b in ends:
                if 0 <= b <= n:
                    found.append(_make_alignment(a, Mark.notch(b)))
    else:
        d = frac.denominator
        for finger, q in rod.scales():
            if q % d:
                continue
            step = q // d
            # notch at a lower position than the incision, then at a higher one
            j = frac.numerator * step
            start = finger - 1 - whole
            if start >= 0:
                found.append(_make_alignment(start, Mark.incision(finger, q, j)))
            j = q - frac.numerator * step
            start = finger + whole
            if start <= n:
                found.append(_make_alignment(start, Mark.incision(finger, q, j)))
    found.sort(key=Alignment.sort_key)
    return found


def draw(rod: RodSpec, reading) -> Alignment:
    """The preferred alignment for tracing a segment of ``reading`` fingers."""
    value = reading.value if isinstance(reading, Reading) else as_rational(reading)
    options = alignments_for(rod, value)
    if not options:
        raise Unachievable(
            f"{format_rational(value, 'mixed')} finger cannot be traced on the {rod.name} rod"
        )
    return options[0]


def _nearest_candidates(rod: RodSpec, target: Fraction):
    n = rod.finger_count
    lo = math.floor(target)
    yield Fraction(lo)
    if lo < n:
        yield Fraction(lo + 1)
    for finger, q in rod.scales():
        # a finger/scale pair reads n + k/q for n up to the longer side of the rod
        top = (max(finger - 1, n - finger) + 1) * q - 1
        k = math.floor(target * q)
        for c in (k, k + 1):
            if 0 <= c <= top:
                yield Fraction(c, q)


def best_reading(rod: RodSpec, target) -> MeasurementResult:
    """Closest readable value to ``target`` fingers, with its alignment.

    Equidistant candidates resolve to the smaller value.
    """
    target = as_rational(target)
    if target < 0:
        raise ValueError("target length must be nonnegative")
    if target > rod.finger_count:
        raise ValueError(
            f"target {format_rational(target, 'mixed')} exceeds the {rod.finger_count}-finger "
            "rod; use compose_long"
        )
    value = min(_nearest_candidates(rod, target), key=lambda v: (abs(v - target), v))
    reading = Reading.from_value(value)
    error = value - target
    return MeasurementResult(
        target=target,
        reading=reading,
        alignment=draw(rod, value),
        error_fingers=error,
        error_mm=error * rod.finger_length_mm,
    )


def read_mm(rod: RodSpec, length_mm) -> MeasurementResult:
    length_mm = as_rational(length_mm)
    if length_mm < 0:
        raise ValueError("length must be nonnegative")
    return best_reading(rod, length_mm / rod.finger_length_mm)


def compose_long(rod: RodSpec, target) -> tuple[int, MeasurementResult]:
    """Split a long ``target`` into whole rod lengths plus one reading.

    A target of exactly ``k`` rod lengths gives ``(k, reading 0)``.
    """
    target = as_rational(target)
    if target < 0:
        raise ValueError("target length must be nonnegative")
    full = math.floor(target / rod.finger_count)
    return full, best_reading(rod, target - full * rod.finger_count)
