import math

import pytest
from pytest import raises

from lambshift.degeneracy import (
    adjacent_ratio,
    degeneracy,
    degeneracy_table,
    j_star_asymptotic,
    j_star_continuous,
    j_star_exact,
    log_degeneracy,
    log_states_with_k_excitations,
    max_degeneracy_fraction,
    states_with_k_excitations,
    strong_support,
)
from lambshift.errors import DomainError
from lambshift.subspace import allowed_twice_j


def test_degeneracy_small_cases():
    assert degeneracy(1, 1) == 1
    assert degeneracy(2, 0) == 1
    assert degeneracy(2, 2) == 1
    assert degeneracy(3, 1) == 2
    assert degeneracy(3, 3) == 1
    assert degeneracy(4, 0) == 2
    assert degeneracy(4, 2) == 3


def test_degeneracy_rejects_bad_j():
    with raises(DomainError):
        degeneracy(3, 2)
    with raises(DomainError):
        degeneracy(3, 5)
    with raises(DomainError):
        log_degeneracy(4, 1)


def test_dimension_identity_is_exact():
    for n_spins in range(1, 61):
        total = sum(
            (twice_j + 1) * degeneracy(n_spins, twice_j)
            for twice_j in allowed_twice_j(n_spins)
        )
        assert total == 2**n_spins
        assert degeneracy(n_spins, n_spins) == 1


def test_degeneracy_table():
    table = degeneracy_table(10)
    assert table.weighted_total() == 2**10
    assert table.entries[10].exact_count == 1
    assert table.fraction(10) == pytest.approx(2.0**-10)

    big = degeneracy_table(400)
    assert big.weighted_total() is None
    assert big.entries[0].exact_count is None


def test_log_degeneracy_agrees_with_exact():
    for n_spins in (7, 50, 200):
        for twice_j in allowed_twice_j(n_spins):
            exact = math.log(degeneracy(n_spins, twice_j))
            assert log_degeneracy(n_spins, twice_j) == pytest.approx(
                exact, rel=1e-10, abs=1e-10
            )


def test_states_with_k_excitations():
    assert states_with_k_excitations(3, 0) == 1
    assert states_with_k_excitations(3, 1) == 4
    assert states_with_k_excitations(3, 2) == 7
    assert states_with_k_excitations(3, 9) == 8
    assert log_states_with_k_excitations(30, 12) == pytest.approx(
        math.log(states_with_k_excitations(30, 12)), rel=1e-12
    )
    with raises(DomainError):
        states_with_k_excitations(3, -1)


def test_j_star_exact_examples():
    assert j_star_exact(1000) == 30
    assert j_star_exact(100) == 10
    assert j_star_exact(1) == 1


def test_j_star_exact_is_argmax():
    for n_spins in list(range(1, 80)) + [250, 1000]:
        best = j_star_exact(n_spins)
        top = degeneracy(n_spins, best)
        for twice_j in allowed_twice_j(n_spins):
            value = degeneracy(n_spins, twice_j)
            assert value <= top
            if value == top:
                assert twice_j >= best


def test_j_star_estimates():
    assert j_star_asymptotic(1000) == pytest.approx(
        math.sqrt(1000) / 2 - 0.5 + 1 / (6 * math.sqrt(1000))
    )
    for n_spins in (100, 1000, 5000):
        exact_j = j_star_exact(n_spins) / 2
        assert abs(j_star_continuous(n_spins) - exact_j) <= 1.0
        assert abs(j_star_asymptotic(n_spins) - exact_j) <= 1.0


def test_adjacent_ratio():
    assert adjacent_ratio(4, 0) == pytest.approx(2 / 3)
    assert adjacent_ratio(4, 2) == pytest.approx(3.0)
    assert adjacent_ratio(3, 1) == pytest.approx(2.0)
    for n_spins in (4, 7, 30, 501):
        assert adjacent_ratio(n_spins, n_spins - 2) == pytest.approx(n_spins - 1)
    with raises(DomainError):
        adjacent_ratio(4, 4)


def test_adjacent_ratio_near_the_peak():
    # d_15 / d_16 for N=1000; j=15 is the argmax so the ratio sits just above 1
    ratio = adjacent_ratio(1000, 30)
    assert ratio == pytest.approx(31 * 517 / (33 * 485), rel=1e-9)
    assert 1.0013 < ratio < 1.0014


def test_max_degeneracy_fraction_bound():
    for n_spins in (50, 51, 120, 999, 2500, 5000):
        assert n_spins * max_degeneracy_fraction(n_spins) <= 1.0


def test_strong_support_window():
    for n_spins in (100, 401, 1000, 5000):
        window = strong_support(n_spins, 0.99)
        assert window.twice_j_max / 2 <= 3 * math.sqrt(n_spins)
        assert window.captured >= 0.99

    full = strong_support(20, 1.0)
    assert full.twice_j_max == 20
    assert full.captured == 1.0

    with raises(DomainError):
        strong_support(20, 0.0)
    with raises(DomainError):
        strong_support(20, 1.5)


def test_strong_support_exact_and_log_paths_agree():
    # N=256 takes the exact path, N=258 the log-domain one; windows move smoothly
    exact = strong_support(256, 0.999)
    logged = strong_support(258, 0.999)
    assert abs(exact.twice_j_max - logged.twice_j_max) <= 2
