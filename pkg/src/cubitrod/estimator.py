"""scikit-learn transformer that snaps lengths to what a rod can read."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .measurement import best_reading, compose_long
from .rods import achievable_values
from .units import Unit
from .validation import check_lengths, check_rod


class RodQuantizer(TransformerMixin, BaseEstimator):
    """Replace every length by the closest value readable on a rod.

    Parameters
    ----------
    rod : str or RodSpec, default="royal"
        Builtin rod name, path to a rod document, or a RodSpec.
    unit : {"finger", "millimeter"}, default="finger"
        Unit of the input and output values.
    long : {"error", "compose"}, default="error"
        What to do with lengths beyond the rod: raise, or lay the rod end to
        end and read the remainder.
    exact : bool, default=False
        Return an object array of Fractions instead of floats.
    """

    def __init__(self, rod="royal", unit="finger", long="error", exact=False):
        self.rod = rod
        self.unit = unit
        self.long = long
        self.exact = exact

    def fit(self, X, y=None):
        if self.long not in ("error", "compose"):
            raise ValueError(f"long must be 'error' or 'compose', got {self.long!r}")
        unit = Unit.parse(self.unit)
        if unit not in (Unit.FINGER, Unit.MILLIMETER):
            raise ValueError("unit must be 'finger' or 'millimeter'")
        X = check_lengths(X)
        self.rod_ = check_rod(self.rod)
        self.fingers_per_unit_ = unit.fingers_per_unit(self.rod_.finger_length_mm)
        self.achievable_values_ = np.array(achievable_values(self.rod_), dtype=object)
        self.n_features_in_ = X.shape[1]
        return self

    def _quantize(self, x):
        fingers = x * self.fingers_per_unit_
        if fingers > self.rod_.finger_count:
            if self.long == "error":
                raise ValueError(
                    f"length {x} exceeds the {self.rod_.name} rod; use long='compose'"
                )
            full, rest = compose_long(self.rod_, fingers)
            value = full * self.rod_.finger_count + rest.reading.value
        else:
            value = best_reading(self.rod_, fingers).reading.value
        return value / self.fingers_per_unit_

    def transform(self, X):
        check_is_fitted(self, "rod_")
        X = check_lengths(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but RodQuantizer was fitted with "
                f"{self.n_features_in_}"
            )
        out = np.frompyfunc(self._quantize, 1, 1)(X)
        return out if self.exact else out.astype(float)

    def quantization_error(self, X):
        """Signed error ``transform(X) - X`` in the input unit, exact."""
        check_is_fitted(self, "rod_")
        X = check_lengths(X)
        return np.frompyfunc(self._quantize, 1, 1)(X) - X
