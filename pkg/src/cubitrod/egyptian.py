"""Egyptian unit-fraction notation.

A value is written as a whole number, optionally 2/3, then distinct unit
fractions in ascending denominator order: ``"3 1/2 1/8"``, ``"2/3 1/5 1/30"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .numerics import as_rational

TWO_THIRDS = Fraction(2, 3)
HORUS_DENOMINATORS = (2, 4, 8, 16, 32, 64)


class NotationError(ValueError):
    pass


class NotDyadic(ValueError):
    """The value is not a sum of Horus-eye fractions 1/2 .. 1/64."""


@dataclass(frozen=True)
class UnitFractionSum:
    whole: int = 0
    has_two_thirds: bool = False
    unit_denominators: tuple[int, ...] = ()

    def __post_init__(self):
        dens = tuple(self.unit_denominators)
        if self.whole < 0:
            raise NotationError("whole part must be nonnegative")
        if any(d < 2 for d in dens):
            raise NotationError("unit denominators must be >= 2")
        if any(a >= b for a, b in zip(dens, dens[1:])):
            raise NotationError("unit denominators must strictly increase")
        object.__setattr__(self, "unit_denominators", dens)

    @property
    def value(self) -> Fraction:
        total = Fraction(self.whole) + sum(Fraction(1, d) for d in self.unit_denominators)
        return total + TWO_THIRDS if self.has_two_thirds else total

    def __str__(self) -> str:
        return render(self)


def _greedy(remainder: Fraction) -> list[int]:
    dens = []
    while remainder > 0:
        # largest unit fraction not exceeding the remainder
        d = -(-remainder.denominator // remainder.numerator)
        dens.append(d)
        remainder -= Fraction(1, d)
    return dens


def greedy_decompose(r) -> UnitFractionSum:
    """Fibonacci-Sylvester greedy expansion of the fractional part of ``r``."""
    r = as_rational(r)
    if r < 0:
        raise ValueError("cannot decompose a negative value")
    whole = math.floor(r)
    return UnitFractionSum(whole, False, tuple(_greedy(r - whole)))


def egyptian_decompose(r, use_two_thirds: bool = True) -> UnitFractionSum:
    """Greedy expansion, optionally taking 2/3 first when the fraction allows it.

    With ``use_two_thirds``, 9/10 becomes 2/3 1/5 1/30 rather than 1/2 1/3 1/15.
    """
    r = as_rational(r)
    if r < 0:
        raise ValueError("cannot decompose a negative value")
    whole = math.floor(r)
    frac = r - whole
    if use_two_thirds and frac >= TWO_THIRDS:
        return UnitFractionSum(whole, True, tuple(_greedy(frac - TWO_THIRDS)))
    return UnitFractionSum(whole, False, tuple(_greedy(frac)))


def horus_decompose(r) -> list[int]:
    """Denominators from {2, ..., 64} whose unit fractions sum to ``r``."""
    r = as_rational(r)
    if not 0 <= r < 1:
        raise ValueError("Horus-eye fractions cover [0, 1) only")
    k = r * 64
    if k.denominator != 1:
        raise NotDyadic(f"{r} is not a multiple of 1/64")
    k = int(k)
    return [d for bit, d in zip(range(5, -1, -1), HORUS_DENOMINATORS) if k >> bit & 1]


def render(s: UnitFractionSum) -> str:
    terms = ["2/3"] if s.has_two_thirds else []
    terms += [f"1/{d}" for d in s.unit_denominators]
    if s.whole or not terms:
        terms.insert(0, str(s.whole))
    return " ".join(terms)


_WHOLE = re.compile(r"0|[1-9][0-9]*")
_UNIT = re.compile(r"1/([1-9][0-9]*)")


def parse_notation(text: str) -> UnitFractionSum:
    """Inverse of :func:`render`."""
    tokens = text.strip().split(" ")
    if not tokens or tokens == [""]:
        raise NotationError("empty notation")
    whole = 0
    if _WHOLE.fullmatch(tokens[0]):
        whole = int(tokens.pop(0))
        if whole == 0 and tokens:
            raise NotationError("a zero whole part is written only for the empty sum")
    two_thirds = False
    dens = []
    for tok in tokens:
        if tok == "2/3":
            if two_thirds or dens:
                raise NotationError("2/3 must come once, before the unit fractions")
            two_thirds = True
            continue
        m = _UNIT.fullmatch(tok)
        if not m:
            raise NotationError(f"malformed term {tok!r} in {text!r}")
        d = int(m.group(1))
        if d < 2:
            raise NotationError(f"unit denominator must be >= 2 in {text!r}")
        if dens and d <= dens[-1]:
            kind = "repeated" if d == dens[-1] else "non-increasing"
            raise NotationError(f"{kind} denominator {d} in {text!r}")
        dens.append(d)
    return UnitFractionSum(whole, two_thirds, tuple(dens))
