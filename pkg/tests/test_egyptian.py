from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubitrod.egyptian import (
    NotationError,
    NotDyadic,
    UnitFractionSum,
    egyptian_decompose,
    greedy_decompose,
    horus_decompose,
    parse_notation,
    render,
)
from cubitrod.measurement import best_reading
from cubitrod.rods import achievable_values, royal_cubit

nonneg = st.fractions(min_value=0, max_value=50, max_denominator=200)


def test_greedy_examples():
    assert greedy_decompose(Fraction(5, 8)) == UnitFractionSum(0, False, (2, 8))
    assert greedy_decompose(Fraction(1, 2)).unit_denominators == (2,)
    # 9/10 - 1/2 = 2/5; 2/5 - 1/3 = 1/15
    assert greedy_decompose(Fraction(9, 10)).unit_denominators == (2, 3, 15)
    assert greedy_decompose(Fraction(29, 8)) == UnitFractionSum(3, False, (2, 8))
    assert greedy_decompose(0) == UnitFractionSum()
    assert greedy_decompose(5) == UnitFractionSum(5)


def test_greedy_rejects_negative():
    with pytest.raises(ValueError):
        greedy_decompose(Fraction(-1, 2))


def test_two_thirds_examples():
    assert egyptian_decompose(Fraction(9, 10), True) == UnitFractionSum(0, True, (5, 30))
    assert egyptian_decompose(Fraction(2, 3), True) == UnitFractionSum(0, True, ())
    assert egyptian_decompose(Fraction(2, 3), False).unit_denominators == (2, 6)
    assert egyptian_decompose(Fraction(1, 2), True) == greedy_decompose(Fraction(1, 2))


def test_greedy_needs_big_integers():
    # 5/121 greedy runs past 64-bit denominators
    dens = greedy_decompose(Fraction(5, 121)).unit_denominators
    assert max(dens) > 2**64
    assert sum(Fraction(1, d) for d in dens) == Fraction(5, 121)


@given(nonneg, st.booleans())
def test_reconstruction(r, flag):
    assert greedy_decompose(r).value == r
    assert egyptian_decompose(r, flag).value == r


@given(st.fractions(min_value=0, max_value=1, max_denominator=300).filter(lambda f: f < 1))
def test_greedy_steps_shrink(r):
    remainder = r
    prev = 1
    for d in greedy_decompose(r).unit_denominators:
        assert d > prev
        assert Fraction(1, d) <= remainder < Fraction(1, d - 1)
        new = remainder - Fraction(1, d)
        assert new < remainder
        remainder, prev = new, d
    assert remainder == 0


def test_horus_examples():
    assert horus_decompose(Fraction(63, 64)) == [2, 4, 8, 16, 32, 64]
    assert horus_decompose(Fraction(3, 4)) == [2, 4]
    assert horus_decompose(0) == []
    with pytest.raises(NotDyadic):
        horus_decompose(Fraction(1, 3))
    with pytest.raises(NotDyadic):
        horus_decompose(Fraction(1, 128))
    with pytest.raises(ValueError):
        horus_decompose(1)


@pytest.mark.parametrize("k", range(64))
def test_horus_matches_binary_digits(k):
    dens = horus_decompose(Fraction(k, 64))
    assert sum(Fraction(1, d) for d in dens) == Fraction(k, 64)
    bits = {2**i for i in range(1, 7) if k & (64 >> i)}
    assert set(dens) == bits
    assert dens == sorted(dens)


def test_dyadic_readings_on_royal_cubit():
    rod = royal_cubit()
    for v in achievable_values(rod):
        frac = best_reading(rod, v).reading.fraction
        if frac.denominator in (2, 4, 8, 16):
            dens = horus_decompose(frac)
            text = render(UnitFractionSum(0, False, tuple(dens)))
            assert all(int(t.split("/")[1]) in (2, 4, 8, 16, 32, 64) for t in text.split())


@pytest.mark.parametrize(
    "s, text",
    [
        (UnitFractionSum(3, False, (2, 8)), "3 1/2 1/8"),
        (UnitFractionSum(0, True, (5, 30)), "2/3 1/5 1/30"),
        (UnitFractionSum(), "0"),
        (UnitFractionSum(7), "7"),
        (UnitFractionSum(1, True, ()), "1 2/3"),
    ],
)
def test_render_and_parse(s, text):
    assert render(s) == text
    assert parse_notation(text) == s


@pytest.mark.parametrize(
    "text",
    ["1/2 1/2", "1/3 1/2", "1/2 2/3", "2/3 2/3", "", "0 1/2", "1/1", "3/4", "1/2  1/3", "x", "1/0", "01 1/2"],
)
def test_parse_rejects(text):
    with pytest.raises(NotationError):
        parse_notation(text)


def test_sum_validates():
    with pytest.raises(NotationError):
        UnitFractionSum(0, False, (3, 2))
    with pytest.raises(NotationError):
        UnitFractionSum(0, False, (1,))


sums = st.builds(
    UnitFractionSum,
    st.integers(0, 1000),
    st.booleans(),
    st.lists(st.integers(2, 10**12), unique=True, max_size=8).map(lambda xs: tuple(sorted(xs))),
)


@given(sums)
def test_notation_round_trip(s):
    assert parse_notation(render(s)) == s
