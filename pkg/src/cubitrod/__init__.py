"""Exact arithmetic for fraction-graduated measuring rods.

Models the Egyptian royal and short cubit rods and the Sumerian Gudea rule,
reads and traces lengths by notch/incision alignment, writes readings in
Egyptian unit-fraction notation, and measures each rod's precision.
"""

from .analysis import (
    GapReport,
    PerturbationError,
    PerturbationReport,
    compare,
    gap_analysis,
    perturb,
    sweep,
)
from .egyptian import (
    NotDyadic,
    UnitFractionSum,
    egyptian_decompose,
    greedy_decompose,
    horus_decompose,
    parse_notation,
    render,
)
from .estimator import RodQuantizer
from .measurement import (
    Alignment,
    Direction,
    MeasurementResult,
    Reading,
    Unachievable,
    alignments_for,
    best_reading,
    compose_long,
    draw,
    read_mm,
)
from .numerics import Rational, format_rational, parse_quantity
from .rods import (
    Mark,
    MarkKind,
    RodSpec,
    RodSpecError,
    achievable_values,
    dump_spec,
    gudea_rule,
    load_spec,
    marks,
    mirror,
    royal_cubit,
    short_cubit,
)
from .units import ScaledQuantity, Unit, apply_scale, convert

__version__ = "0.1.0"
