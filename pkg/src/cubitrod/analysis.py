"""Precision of a rod design: gaps, error sweeps, incision noise, comparisons."""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
from bisect import bisect_left, bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .measurement import best_reading
from .numerics import as_rational, format_rational
from .rods import RodSpec, achievable_values, marks

DECIMAL_DIGITS = 6
SWEEP_HEADER = ("target", "reading", "error_fingers", "error_mm")
PERTURB_HEADER = ("trial", "mean_abs_error_mm", "max_abs_error_mm")

_U_BITS = 32


class PerturbationError(ValueError):
    """Incision noise large enough to swap neighbouring incisions."""


@dataclass(frozen=True)
class GapReport:
    lo: Fraction
    hi: Fraction
    max_gap: Fraction
    max_gap_location: tuple[Fraction, Fraction]
    worst_case_error: Fraction
    value_count: int


class SweepRecord(NamedTuple):
    target: Fraction
    reading: Fraction
    error_fingers: Fraction
    error_mm: Fraction


class TrialStats(NamedTuple):
    trial: int
    mean_abs_error_mm: Fraction
    max_abs_error_mm: Fraction


@dataclass(frozen=True)
class PerturbationReport:
    epsilon_mm: Fraction
    trials: int
    seed: int
    targets: tuple[Fraction, ...]
    rows: tuple[TrialStats, ...]
    nominal_mean_abs_error_mm: Fraction
    nominal_max_abs_error_mm: Fraction

    @property
    def mean_abs_error_mm(self) -> Fraction:
        return sum((r.mean_abs_error_mm for r in self.rows), Fraction(0)) / len(self.rows)

    @property
    def max_abs_error_mm(self) -> Fraction:
        return max(r.max_abs_error_mm for r in self.rows)

    @property
    def mean_extra_error_mm(self) -> Fraction:
        return self.mean_abs_error_mm - self.nominal_mean_abs_error_mm


@dataclass(frozen=True)
class Comparison:
    rod_a: str
    rod_b: str
    report_a: GapReport
    report_b: GapReport
    dominant: str  # "a", "b" or "tie"


def _check_range(rod: RodSpec, lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = as_rational(lo), as_rational(hi)
    if not 0 <= lo < hi <= rod.finger_count:
        raise ValueError(
            f"range must satisfy 0 <= lo < hi <= {rod.finger_count}, got {lo}:{hi}"
        )
    return lo, hi


def gap_analysis(rod: RodSpec, lo, hi) -> GapReport:
    """Largest spacing between consecutive readable values inside ``[lo, hi]``."""
    lo, hi = _check_range(rod, lo, hi)
    values = achievable_values(rod)
    inside = values[bisect_left(values, lo):bisect_right(values, hi)]
    if not inside:
        raise ValueError(f"no readable value on the {rod.name} rod within {lo}:{hi}")
    gap, where = Fraction(0), (inside[0], inside[0])
    for a, b in zip(inside, inside[1:]):
        if b - a > gap:
            gap, where = b - a, (a, b)
    return GapReport(lo, hi, gap, where, gap / 2, len(inside))


def target_grid(lo, hi, step) -> list[Fraction]:
    """``lo, lo + step, ...`` while not above ``hi``."""
    lo, hi, step = as_rational(lo), as_rational(hi), as_rational(step)
    if step <= 0:
        raise ValueError("step must be positive")
    count = math.floor((hi - lo) / step) + 1
    return [lo + k * step for k in range(count)]


def _sweep_one(rod: RodSpec, target: Fraction) -> SweepRecord:
    res = best_reading(rod, target)
    return SweepRecord(target, res.reading.value, res.error_fingers, res.error_mm)


def sweep(rod: RodSpec, lo, hi, step, n_jobs: int = 1) -> list[SweepRecord]:
    """``best_reading`` at ``lo, lo + step, ...`` up to ``hi``."""
    lo, hi = _check_range(rod, lo, hi)
    targets = target_grid(lo, hi, step)
    return _map(_sweep_one, [(rod, t) for t in targets], n_jobs)


def _map(fn, arg_tuples, n_jobs):
    if n_jobs == 1 or len(arg_tuples) < 2:
        return [fn(*args) for args in arg_tuples]
    workers = (os.cpu_count() or 1) if n_jobs < 1 else n_jobs
    chunk = max(1, len(arg_tuples) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # Executor.map yields in submission order
        return list(pool.map(fn, *zip(*arg_tuples), chunksize=chunk))


def _draw_u(seed: int, trial: int, mark_index: int) -> int:
    key = f"{seed}:{trial}:{mark_index}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=4).digest(), "big")


def unit_offset(seed: int, trial: int, mark_index: int) -> Fraction:
    """Counter-keyed uniform draw in (-1, 1) on a grid of 2**-32."""
    u = _draw_u(seed, trial, mark_index)
    return Fraction(2 * u + 1 - (1 << _U_BITS), 1 << _U_BITS)


@dataclass(frozen=True)
class _TrialContext:
    """Everything a trial needs, as integers over the common denominator ``scale``."""

    seed: int
    scale: int
    finger_count: int
    finger_length_mm: Fraction
    eps_unit: int  # epsilon in fingers times scale, divided by 2**32
    incisions: tuple[tuple[int, int, int, int], ...]  # (mark index, nominal, low, high)
    targets: tuple[int, ...]


def _run_trial(ctx: _TrialContext, trial: int) -> TrialStats:
    d = ctx.scale
    best = {k * d: k * d for k in range(ctx.finger_count + 1)}  # notch-to-notch spans
    for idx, nominal, low, high in ctx.incisions:
        u = _draw_u(ctx.seed, trial, idx)
        moved = min(max(nominal + ctx.eps_unit * (2 * u + 1 - (1 << _U_BITS)), low), high)
        for a in range(0, (ctx.finger_count + 1) * d, d):
            dist = moved - a if moved > a else a - moved
            nom = nominal - a if nominal > a else a - nominal
            if best.get(dist, nom + 1) > nom:
                best[dist] = nom
    keys = sorted(best)

    total = worst = 0
    for ts in ctx.targets:
        i = bisect_left(keys, ts)
        chosen = min(keys[max(i - 1, 0):i + 1], key=lambda k: (abs(k - ts), best[k]))
        err = abs(best[chosen] - ts)
        total += err
        worst = max(worst, err)
    mm = ctx.finger_length_mm
    return TrialStats(trial, Fraction(total, d * len(ctx.targets)) * mm, Fraction(worst, d) * mm)


def perturb(rod: RodSpec, epsilon_mm, trials: int, seed: int, targets, n_jobs: int = 1) -> PerturbationReport:
    """Monte Carlo of imprecise incision engraving.

    Each trial shifts every incision independently by a uniform offset of at
    most ``epsilon_mm`` (clamped inside its finger; notches stay exact). The
    reader picks the notch/mark pair whose *physical* span best matches each
    target and believes the engraved value; the rows record the resulting
    physical error. Offsets are keyed on ``(seed, trial, mark index)``, so the
    report does not depend on ``n_jobs``.
    """
    eps_mm = as_rational(epsilon_mm)
    if eps_mm < 0:
        raise ValueError("epsilon must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    targets = tuple(as_rational(t) for t in targets)
    if not targets:
        raise ValueError("at least one target is needed")
    for t in targets:
        if not 0 <= t <= rod.finger_count:
            raise ValueError(f"target {t} outside 0..{rod.finger_count}")

    eps_f = eps_mm / rod.finger_length_mm
    finest = max((q for _, q in rod.scales()), default=None)
    if finest is not None and 2 * eps_f > Fraction(1, finest):
        limit = rod.finger_length_mm / (2 * finest)
        raise PerturbationError(
            f"epsilon {format_rational(eps_mm, 'decimal', DECIMAL_DIGITS)} mm can reorder "
            f"the 1/{finest} incisions; keep it at or below "
            f"{format_rational(limit, 'decimal', DECIMAL_DIGITS)} mm"
        )

    rod_marks = marks(rod)
    scale = math.lcm(
        *(m.position.denominator for m in rod_marks),
        eps_f.denominator << _U_BITS,
        *(t.denominator for t in targets),
    )
    ctx = _TrialContext(
        seed=seed,
        scale=scale,
        finger_count=rod.finger_count,
        finger_length_mm=rod.finger_length_mm,
        eps_unit=int(eps_f * scale) >> _U_BITS,
        incisions=tuple(
            (idx, int(m.position * scale), (m.finger - 1) * scale, m.finger * scale)
            for idx, m in enumerate(rod_marks)
            if not m.is_notch
        ),
        targets=tuple(int(t * scale) for t in targets),
    )
    rows = _map(_run_trial, [(ctx, k) for k in range(trials)], n_jobs)

    nominal = [abs(best_reading(rod, t).error_mm) for t in targets]
    return PerturbationReport(
        epsilon_mm=eps_mm,
        trials=trials,
        seed=seed,
        targets=targets,
        rows=tuple(rows),
        nominal_mean_abs_error_mm=sum(nominal, Fraction(0)) / len(nominal),
        nominal_max_abs_error_mm=max(nominal),
    )


def compare(rod_a: RodSpec, rod_b: RodSpec, lo, hi) -> Comparison:
    """Gap reports for two rods over the same finger range."""
    a = gap_analysis(rod_a, lo, hi)
    b = gap_analysis(rod_b, lo, hi)
    if a.worst_case_error == b.worst_case_error:
        dominant = "tie"
    else:
        dominant = "a" if a.worst_case_error < b.worst_case_error else "b"
    return Comparison(rod_a.name, rod_b.name, a, b, dominant)


def _dec(x: Fraction, digits: int) -> str:
    return format_rational(x, "decimal", digits)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def sweep_csv(records, digits: int = DECIMAL_DIGITS) -> str:
    return _csv(SWEEP_HEADER, ([_dec(v, digits) for v in rec] for rec in records))


def perturb_csv(report: PerturbationReport, digits: int = DECIMAL_DIGITS) -> str:
    return _csv(
        PERTURB_HEADER,
        (
            [row.trial, _dec(row.mean_abs_error_mm, digits), _dec(row.max_abs_error_mm, digits)]
            for row in report.rows
        ),
    )
