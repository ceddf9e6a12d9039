"""Shared fixtures for the test suite."""

import pytest

import oracles


@pytest.fixture(scope="session")
def small_odd_primes():
    """Odd primes up to 300, from the trial-division oracle."""
    return oracles.primes_trial(3, 300)


@pytest.fixture(scope="session")
def primes_3mod4_to_1500():
    """Primes = 3 mod 4 up to 1500, from the trial-division oracle."""
    return oracles.primes_trial(3, 1500, 3, 4)
