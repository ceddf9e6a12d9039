"""Tests for the exact floor-series identity."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from halfsum.errors import DomainError
from halfsum.floorlemma import floor_half_series, truncation_index


class TestExamples:
    def test_series_examples(self):
        assert floor_half_series(0) == 0
        assert floor_half_series(Fraction(3, 2)) == 1
        assert floor_half_series(5) == 5

    def test_five_term_breakdown(self):
        # x = 5: terms are 3 + 1 + 1, vanishing from r = 4 on.
        assert truncation_index(5) == 4
        assert oracles.floor_series_brute(5) == 5

    def test_truncation_examples(self):
        assert truncation_index(0) == 1
        assert truncation_index(1) == 2
        assert truncation_index(5) == 4
        assert truncation_index(Fraction(1, 2)) == 1
        assert truncation_index(Fraction(3, 2)) == 2


class TestIdentity:
    def test_integers(self):
        for x in range(0, 3000):
            assert floor_half_series(x) == x

    def test_small_rationals_against_brute(self):
        for num in range(0, 40):
            for den in range(1, 17):
                x = Fraction(num, den)
                assert floor_half_series(x) == num // den
                assert floor_half_series(x) == oracles.floor_series_brute(x)

    @settings(max_examples=400, deadline=None)
    @given(
        num=st.integers(min_value=0, max_value=10**9),
        den=st.integers(min_value=1, max_value=10**9),
    )
    def test_random_rationals(self, num, den):
        assert floor_half_series(Fraction(num, den)) == num // den

    @settings(max_examples=200, deadline=None)
    @given(
        k=st.integers(min_value=0, max_value=40),
        num=st.integers(min_value=0, max_value=10**9),
        den=st.integers(min_value=1, max_value=10**9),
    )
    def test_inductive_decomposition(self, num, den, k):
        # For x = 2^k + x1 with 0 <= x1 < 2^k the series splits additively.
        x1 = Fraction(num, den) % (2**k) if k else Fraction(0)
        x = 2**k + x1
        assert floor_half_series(x) == 2**k + floor_half_series(x1)


class TestTruncationSoundness:
    @settings(max_examples=200, deadline=None)
    @given(
        num=st.integers(min_value=0, max_value=10**9),
        den=st.integers(min_value=1, max_value=10**9),
    )
    def test_terms_vanish_at_index(self, num, den):
        x = Fraction(num, den)
        r = truncation_index(x)
        assert x < 2 ** (r - 1)
        if r > 1:
            assert x >= 2 ** (r - 2)
        for extra in range(3):
            term = (x / 2 ** (r + extra) + Fraction(1, 2)).__floor__()
            assert term == 0


class TestDomain:
    def test_rejects_negatives(self):
        with pytest.raises(DomainError):
            floor_half_series(-1)
        with pytest.raises(DomainError):
            truncation_index(Fraction(-1, 2))

    def test_rejects_floats_and_bools(self):
        with pytest.raises(DomainError):
            floor_half_series(1.5)
        with pytest.raises(DomainError):
            truncation_index(0.5)
        with pytest.raises(DomainError):
            floor_half_series(True)
