import math

import numpy as np
import pytest
from pytest import raises

from lambshift.errors import ConvergenceError
from lambshift.oracle import oracle_spectrum
from lambshift.subspace import SubspaceIndex, allowed_twice_j, build_coupling_matrix
from lambshift.tridiag import (
    Determinant,
    char_poly_eval,
    determinant,
    determinant_recurrence,
    eigenvalues,
    eigenvector,
    largest_eigenvalue,
    row_sums,
    spectral_radius_bound,
    sturm_count,
    trace_power,
)


def _matrix(n_spins, twice_j, k):
    return build_coupling_matrix(SubspaceIndex(n_spins, twice_j, k))


def _random_indices(count, seed=7, max_spins=399):
    rng = np.random.default_rng(seed)
    picked = []
    while len(picked) < count:
        n_spins = int(rng.integers(1, max_spins + 1))
        twice_j = int(rng.choice(allowed_twice_j(n_spins)))
        k = int(rng.integers(0, 3 * n_spins))
        index = SubspaceIndex(n_spins, twice_j, k)
        if not index.is_empty:
            picked.append(index)
    return picked


def test_eigenvalues_examples():
    values = eigenvalues(_matrix(3, 3, 3)).eigenvalues
    root = math.sqrt(10 - math.sqrt(73))
    outer = math.sqrt(10 + math.sqrt(73))
    np.testing.assert_allclose(values, [-outer, -root, root, outer], rtol=1e-12)

    np.testing.assert_allclose(
        eigenvalues(_matrix(3, 1, 3)).eigenvalues, [-math.sqrt(2), math.sqrt(2)], rtol=1e-12
    )
    assert eigenvalues(_matrix(2, 0, 5)).eigenvalues.tolist() == [0.0]


def test_eigenvalues_match_closed_forms():
    for n_spins in (1, 2, 3):
        for k in range(0, 41):
            reference = oracle_spectrum(n_spins, k)
            for block in reference.blocks:
                index = SubspaceIndex(n_spins, block.twice_j, k)
                if index.is_empty:
                    continue
                computed = eigenvalues(build_coupling_matrix(index)).eigenvalues
                np.testing.assert_allclose(
                    computed, block.eigenvalues, rtol=1e-10, atol=1e-10
                )


def test_spectrum_is_simple_symmetric_and_ascending():
    for index in _random_indices(60):
        spectrum = eigenvalues(build_coupling_matrix(index))
        values = spectrum.eigenvalues
        assert spectrum.dim <= index.twice_j + 1
        assert np.all(np.diff(values) > 0)
        assert spectrum.pairing_error() <= 1e-9 * max(1.0, spectrum.max_eigenvalue)
        if spectrum.dim % 2:
            assert values[spectrum.dim // 2] == 0.0
        assert not values.flags.writeable


def test_two_hundred_random_subspaces_pair_and_separate():
    indices = _random_indices(200, seed=23, max_spins=200)
    for index in indices:
        spectrum = eigenvalues(build_coupling_matrix(index))
        values = spectrum.eigenvalues
        top = max(1.0, spectrum.max_eigenvalue)
        np.testing.assert_allclose(values + values[::-1], 0.0, rtol=0, atol=1e-9 * top)
        assert np.all(np.diff(values) > 0), index


def test_spectrum_min_gap():
    assert eigenvalues(_matrix(2, 0, 3)).min_gap() == math.inf
    assert eigenvalues(_matrix(3, 1, 3)).min_gap() == pytest.approx(2 * math.sqrt(2))


def test_largest_eigenvalue_agrees_with_spectrum():
    for index in _random_indices(20, seed=11):
        m = build_coupling_matrix(index)
        assert largest_eigenvalue(m) == pytest.approx(
            eigenvalues(m).max_eigenvalue, rel=1e-11, abs=1e-11
        )
    assert largest_eigenvalue(_matrix(4, 0, 9)) == 0.0


def test_eigenvalues_match_dense_solver():
    m = _matrix(60, 40, 90)
    dense = np.linalg.eigvalsh(m.to_dense())
    np.testing.assert_allclose(eigenvalues(m).eigenvalues, dense, rtol=1e-10, atol=1e-9)


def test_sturm_count():
    m = _matrix(3, 3, 3)
    values = eigenvalues(m).eigenvalues
    assert sturm_count(m, values[0] - 1.0) == 0
    assert sturm_count(m, 0.5) == 2
    assert sturm_count(m, values[-1] + 1.0) == 4
    counts = sturm_count(m, np.array([-10.0, 0.5, 10.0]))
    assert counts.tolist() == [0, 2, 4]
    assert isinstance(sturm_count(m, 0.5), int)


def test_char_poly_vanishes_on_eigenvalues():
    m = _matrix(3, 3, 3)
    for value in eigenvalues(m).eigenvalues:
        assert abs(char_poly_eval(m, value)) < 1e-9
    assert char_poly_eval(m, 0.0) == pytest.approx(27.0)


def test_determinant_examples():
    assert float(determinant(_matrix(3, 3, 3))) == pytest.approx(27.0)
    assert float(determinant(_matrix(3, 1, 3))) == pytest.approx(-2.0)
    odd = determinant(_matrix(4, 2, 5))
    assert odd.sign == 0
    assert odd.value == 0.0


def test_determinant_equals_recurrence_and_product():
    for index in _random_indices(40, seed=3):
        m = build_coupling_matrix(index)
        if m.dim > 40:
            continue
        det = determinant(m)
        product = float(np.prod(eigenvalues(m).eigenvalues))
        recurrence = determinant_recurrence(m)
        if m.dim % 2:
            assert det.sign == 0
            assert recurrence == 0.0
        else:
            assert float(det) == pytest.approx(recurrence, rel=1e-9)
            assert float(det) == pytest.approx(product, rel=1e-8)


def test_determinant_overflow_is_reported():
    det = determinant(_matrix(401, 401, 1200))
    assert det.sign != 0
    assert det.value is None
    with raises(OverflowError):
        float(det)
    assert Determinant(sign=-1, log_abs=0.0).value == -1.0


def test_row_sums_and_radius_bound():
    m = _matrix(3, 3, 3)
    np.testing.assert_allclose(
        row_sums(m), [3.0, 3 + 2 * math.sqrt(2), 2 * math.sqrt(2) + math.sqrt(3), math.sqrt(3)]
    )
    assert spectral_radius_bound(m) == pytest.approx(3 + 2 * math.sqrt(2))
    assert row_sums(_matrix(2, 0, 1)).tolist() == [0.0]


def test_trace_power():
    m = _matrix(3, 3, 3)
    assert trace_power(m, 0) == 4.0
    assert trace_power(m, 1) == 0.0
    assert trace_power(m, 2) == pytest.approx(40.0)
    assert trace_power(m, 3) == pytest.approx(0.0, abs=1e-12)
    values = eigenvalues(m).eigenvalues
    assert trace_power(m, 4) == pytest.approx(float(np.sum(values**4)))
    with raises(ValueError):
        trace_power(m, -1)


def test_eigenvector_two_by_two():
    m = _matrix(3, 1, 3)
    plus = eigenvector(m, math.sqrt(2))
    minus = eigenvector(m, -math.sqrt(2))
    np.testing.assert_allclose(plus.vector, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-10)
    np.testing.assert_allclose(minus.vector, [1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-10)


def test_eigenvector_residual_and_sign():
    for index in _random_indices(15, seed=5):
        m = build_coupling_matrix(index)
        values = eigenvalues(m).eigenvalues
        tol = 1e-10 * max(1.0, float(np.max(np.abs(values)))) * max(
            1.0, float(np.max(m.off_diag, initial=1.0))
        )
        for value in (values[0], values[len(values) // 2], values[-1]):
            pair = eigenvector(m, value)
            vector = pair.vector
            assert np.linalg.norm(vector) == pytest.approx(1.0)
            residual = m.to_dense() @ vector - value * vector
            assert np.max(np.abs(residual)) <= tol
            leading = np.flatnonzero(np.abs(vector) > 1e-12 * np.max(np.abs(vector)))[0]
            assert vector[leading] > 0


def test_eigenvector_null_vector_for_odd_dimension():
    m = _matrix(4, 2, 5)
    pair = eigenvector(m, 0.0)
    assert pair.vector[1] == 0.0
    np.testing.assert_allclose(m.to_dense() @ pair.vector, 0.0, atol=1e-12)


def test_eigenvector_of_one_dimensional_block():
    pair = eigenvector(_matrix(2, 0, 4), 0.0)
    assert pair.vector.tolist() == [1.0]
    with raises(ConvergenceError):
        eigenvector(_matrix(2, 0, 4), 1.0)


def test_eigenvector_rejects_non_eigenvalue():
    m = _matrix(3, 3, 3)
    with raises(ConvergenceError):
        eigenvector(m, 0.5)
    with raises(ArithmeticError):
        eigenvector(m, 100.0)
