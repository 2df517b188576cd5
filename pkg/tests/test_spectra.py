"""Eigendecomposition, stratum classification, and gap quantities."""

import numpy as np
import pytest

from degengeo.hermitian import conjugate, random_hermitian, random_unitary
from degengeo.spectra import (
    classify_stratum,
    eigh,
    half_gap,
    is_in_sigma_k,
    is_on_boundary,
    stratum_codimension,
)


def test_eigh_sorts_diagonal_input():
    spec = eigh(np.diag([2.0, 0.0, 1.0]).astype(complex))
    np.testing.assert_allclose(spec.eigenvalues, [0.0, 1.0, 2.0])


def test_eigh_pauli_x():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    np.testing.assert_allclose(eigh(sx).eigenvalues, [-1.0, 1.0], atol=1e-15)


def test_eigh_residual_random():
    rng = np.random.default_rng(0)
    h = random_hermitian(8, rng)
    spec = eigh(h)
    lam = np.diag(spec.eigenvalues)
    u = spec.vectors
    assert np.linalg.norm(u.conj().T @ h @ u - lam, "fro") <= 1e-10
    assert np.linalg.norm(u.conj().T @ u - np.eye(8), "fro") <= 1e-10


def test_eigh_phase_convention_deterministic():
    rng = np.random.default_rng(1)
    h = random_hermitian(5, rng)
    u1 = eigh(h).vectors
    u2 = eigh(h.copy()).vectors
    np.testing.assert_array_equal(u1, u2)
    for j in range(5):
        i = int(np.argmax(np.abs(u1[:, j])))
        assert u1[i, j].imag == pytest.approx(0.0, abs=1e-15)
        assert u1[i, j].real > 0


def _spec_of(vals):
    return eigh(np.diag(np.array(vals, dtype=float)).astype(complex))


def test_classify_groups():
    assert classify_stratum(_spec_of([0, 0, 1, 2])).parts == (2, 1, 1)
    assert classify_stratum(_spec_of([0, 0, 1, 1])).parts == (2, 2)
    assert classify_stratum(_spec_of([0, 0.5, 1, 2])).parts == (1, 1, 1, 1)


def test_classify_chained_grouping():
    # a~b and b~c group all three even though a-c exceeds the tolerance
    spec = _spec_of([0.0, 5e-9, 1e-8, 1.0])
    assert classify_stratum(spec, rel_tol=1e-8).parts == (3, 1)


def test_classify_membership_helpers():
    part = classify_stratum(_spec_of([0, 0, 1, 2]))
    assert is_in_sigma_k(part, 2)
    assert not is_in_sigma_k(part, 3)
    assert is_on_boundary(part, 1)
    assert not is_on_boundary(part, 2)
    assert is_on_boundary(classify_stratum(_spec_of([0, 1, 1, 2])), 2)


def test_classify_conjugated():
    rng = np.random.default_rng(2)
    d = np.diag([0.0, 0.0, 1.0, 2.0]).astype(complex)
    for _ in range(10):
        u = random_unitary(4, rng)
        part = classify_stratum(eigh(conjugate(d, u)))
        assert part.parts == (2, 1, 1)


def test_codimension():
    part = classify_stratum(_spec_of([0, 0, 1, 2]))
    assert stratum_codimension(part) == 3
    assert stratum_codimension(classify_stratum(_spec_of([0, 1, 2, 3]))) == 0
    for n, k in [(5, 3), (6, 4)]:
        vals = [0.0] * k + list(range(1, n - k + 1))
        assert stratum_codimension(classify_stratum(_spec_of(vals))) == k * k - 1


def test_codimension_dimension_bookkeeping():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        vals = np.sort(rng.standard_normal(n))
        part = classify_stratum(_spec_of(vals))
        dim = n * n - stratum_codimension(part)
        assert dim + stratum_codimension(part) == n * n


def test_eigenvalue_continuity_weyl_inequality():
    rng = np.random.default_rng(4)
    for _ in range(20):
        h = random_hermitian(6, rng)
        e = random_hermitian(6, rng)
        eps = 10.0 ** rng.uniform(-6, -3)
        e = e * (eps / np.max(np.abs(np.linalg.eigvalsh(e))))
        shift = np.abs(
            np.linalg.eigvalsh(h + e) - np.linalg.eigvalsh(h)
        ).max()
        assert shift <= eps + 1e-10


def test_half_gap():
    assert half_gap(np.diag([0.0, 0.0, 1.0]), 2) == pytest.approx(0.5)
    assert half_gap(np.diag([0.0, 1.0, 2.0]), 1) == pytest.approx(0.5)
    assert half_gap(np.diag([0.0, 1.0, 1.0]), 2) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        half_gap(np.diag([0.0, 1.0]), 2)
