"""Exit criteria for the package, one test per criterion.

The conftest hook prints a PASS/FAIL line for each at the end of the run.
"""

import random
import time
from fractions import Fraction

import pytest

from cubitrod import rods
from cubitrod.analysis import gap_analysis, perturb, perturb_csv, sweep, target_grid
from cubitrod.egyptian import (
    UnitFractionSum,
    egyptian_decompose,
    greedy_decompose,
    horus_decompose,
    parse_notation,
    render,
)
from cubitrod.measurement import Reading, best_reading, draw
from cubitrod.numerics import format_rational, parse_quantity
from cubitrod.rods import achievable_values, mirror, royal_cubit
from cubitrod.units import convert

from oracles import ROYAL, nearest_by_scan, readable

ROYAL_MM = Fraction(75, 4)


def fresh_caches():
    rods._marks.cache_clear()
    rods._achievable.cache_clear()


@pytest.mark.acceptance("AC1", "golden reading 3 5/8 on the royal cubit, exact, under 10 ms")
def test_golden_reading():
    fresh_caches()
    rod = royal_cubit()
    t0 = time.perf_counter()
    res = best_reading(rod, Fraction(29, 8))
    elapsed = time.perf_counter() - t0
    assert res.reading == Reading(3, Fraction(5, 8))
    assert res.error_fingers == 0 and res.error_mm == 0
    assert render(greedy_decompose(res.reading.value)) == "3 1/2 1/8"
    assert elapsed < 0.010, f"{elapsed * 1000:.2f} ms"


@pytest.mark.acceptance("AC2", "drawing 2 4/5 ends at incision 4 of the fifths finger")
def test_golden_draw():
    target = 2 + Fraction(4, 5)
    al = draw(royal_cubit(), target)
    assert al.end_mark.parts == 5 and al.end_mark.index == 4
    assert al.measured_value == target
    assert abs(al.end_mark.position - al.start_notch) == target
    assert best_reading(royal_cubit(), al.measured_value).error_fingers == 0


@pytest.mark.acceptance("AC3", "nine loaves for ten: two-thirds and greedy forms of 9/10")
def test_nine_tenths():
    r = Fraction(9, 10)
    with_two_thirds = egyptian_decompose(r, use_two_thirds=True)
    greedy = egyptian_decompose(r, use_two_thirds=False)
    assert with_two_thirds == UnitFractionSum(0, True, (5, 30))
    assert greedy == UnitFractionSum(0, False, (2, 3, 15))
    assert render(with_two_thirds) == "2/3 1/5 1/30"
    assert render(greedy) == "1/2 1/3 1/15"
    assert Fraction(2, 3) + Fraction(1, 5) + Fraction(1, 30) == r
    assert Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 15) == r
    assert with_two_thirds.value == greedy.value == r


@pytest.mark.acceptance("AC4", "Horus fractions k/64 for every k in 0..63")
def test_horus_suite():
    for k in range(64):
        dens = horus_decompose(Fraction(k, 64))
        assert sum((Fraction(1, d) for d in dens), Fraction(0)) == Fraction(k, 64)
    assert horus_decompose(Fraction(63, 64)) == [2, 4, 8, 16, 32, 64]


@pytest.mark.acceptance("AC5", "unit constants 525 mm and 75/64 mm with their 1-decimal renderings")
def test_unit_constants():
    cubit_mm = convert(28, "finger", "millimeter", ROYAL_MM)
    assert cubit_mm == 525 == 28 * ROYAL_MM
    assert format_rational(cubit_mm / 10, "decimal", 1) == "52.5"
    sixteenth = convert(Fraction(1, 16), "finger", "millimeter", ROYAL_MM)
    assert sixteenth == Fraction(75, 64)
    assert format_rational(sixteenth, "decimal", 6) == "1.171875"
    assert format_rational(sixteenth, "decimal", 1) == "1.2"


@pytest.mark.acceptance("AC6", "best_reading matches brute force on 1000 random targets, under 5 s")
def test_oracle_equivalence():
    rng = random.Random(20240)
    targets = []
    while len(targets) < 1000:
        q = rng.randint(1, 1000)
        p = rng.randint(0, 28 * q)
        targets.append(Fraction(p, q))
    values = readable(ROYAL)
    rod = royal_cubit()
    fresh_caches()
    t0 = time.perf_counter()
    results = [best_reading(rod, t) for t in targets]
    elapsed = time.perf_counter() - t0
    for t, res in zip(targets, results):
        expected = nearest_by_scan(values, t)
        assert abs(res.error_fingers) == abs(expected - t), t
        assert res.reading.value == expected, t
    assert elapsed < 5, f"{elapsed:.2f} s"


@pytest.mark.acceptance("AC7", "royal gap bound on [0, 1] is 1/32 finger and is attained")
def test_gap_bound():
    rod = royal_cubit()
    rep = gap_analysis(rod, 0, 1)
    assert rep.worst_case_error == Fraction(1, 32)
    a, b = rep.max_gap_location
    assert abs(best_reading(rod, (a + b) / 2).error_fingers) == Fraction(1, 32)


@pytest.mark.acceptance("AC8", "mirrored royal cubit reads the same value set, under 1 s")
def test_mirror_invariance():
    fresh_caches()
    t0 = time.perf_counter()
    rod = royal_cubit()
    flipped = mirror(rod)
    same = set(achievable_values(flipped)) == set(achievable_values(rod))
    elapsed = time.perf_counter() - t0
    assert flipped.subdivisions != rod.subdivisions
    assert same
    assert elapsed < 1, f"{elapsed:.2f} s"


@pytest.mark.acceptance("AC9", "perturb CSV is byte-identical across runs and workers; epsilon 0 is the sweep")
def test_reproducibility():
    rod = royal_cubit()
    targets = target_grid(0, 28, Fraction(1, 8))
    args = (rod, Fraction(3, 10), 40, 7, targets)
    first = perturb_csv(perturb(*args)).encode()
    second = perturb_csv(perturb(*args)).encode()
    parallel = perturb_csv(perturb(*args, n_jobs=2)).encode()
    assert first == second == parallel

    nominal = [abs(r.error_mm) for r in sweep(rod, 0, 28, Fraction(1, 8))]
    still = perturb(rod, 0, 5, 7, targets)
    for row in still.rows:
        assert row.mean_abs_error_mm == sum(nominal) / len(nominal)
        assert row.max_abs_error_mm == max(nominal)


def random_fraction(rng):
    q = rng.randint(1, 10**6)
    return Fraction(rng.randint(-(10**7), 10**7), q)


@pytest.mark.acceptance("AC10", "codec round trips for rationals, readings and notation, 1000+ cases each")
def test_codec_round_trips():
    rng = random.Random(99)
    n = 1200
    for _ in range(n):
        r = random_fraction(rng)
        assert parse_quantity(format_rational(r, "fraction")) == r
        assert parse_quantity(format_rational(r, "mixed")) == r
        d = Fraction(rng.randint(-(10**9), 10**9), 10**6)
        assert parse_quantity(format_rational(d, "decimal", 6)) == d
    for _ in range(n):
        reading = Reading(rng.randint(0, 28), Fraction(rng.randint(0, 999), 1000))
        assert Reading.parse(str(reading)) == reading
    for _ in range(n):
        dens = tuple(sorted(rng.sample(range(2, 10**6), rng.randint(0, 6))))
        s = UnitFractionSum(rng.randint(0, 500), rng.random() < 0.5, dens)
        assert parse_notation(render(s)) == s
        v = abs(random_fraction(rng))
        assert parse_notation(render(egyptian_decompose(v))).value == v
