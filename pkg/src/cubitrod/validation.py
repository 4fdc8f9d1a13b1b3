"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

import numbers
import os
from fractions import Fraction

import numpy as np

from .numerics import as_rational, parse_quantity
from .rods import BUILTIN_RODS, RodSpec, builtin, load_spec


def check_rod(rod) -> RodSpec:
    """Resolve a RodSpec, a builtin rod name, or a path to a rod document."""
    if isinstance(rod, RodSpec):
        return rod
    if isinstance(rod, str):
        if rod in BUILTIN_RODS:
            return builtin(rod)
        if os.path.exists(rod):
            with open(rod, encoding="utf-8") as fh:
                return load_spec(fh.read())
        return builtin(rod)  # raises with the list of known names
    raise TypeError(f"rod must be a RodSpec, builtin name or path, not {type(rod).__name__}")


def check_length(value, name: str = "length") -> Fraction:
    value = as_rational(value)
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    return value


def parse_range(text: str) -> tuple[Fraction, Fraction]:
    """``"lo:hi"`` with rational endpoints."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"range must look like lo:hi, got {text!r}")
    return parse_quantity(lo), parse_quantity(hi)


def to_rational(x) -> Fraction:
    """Exact value of one array element; binary floats convert without rounding."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_quantity(x)
    if isinstance(x, numbers.Real):
        x = float(x)
        if not np.isfinite(x):
            raise ValueError("lengths must be finite")
        return Fraction(x)
    raise TypeError(f"cannot read {type(x).__name__} as a length")


def check_lengths(X) -> np.ndarray:
    """2-D object array of Fractions from array-like numeric or string input."""
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 1:
        raise ValueError(
            "expected a 2-D array; reshape with X.reshape(-1, 1) for a single feature"
        )
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {arr.ndim} dimensions")
    if arr.size == 0:
        raise ValueError("empty input")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        value = to_rational(x)
        if value < 0:
            raise ValueError(f"negative length at {idx}")
        out[idx] = value
    return out
