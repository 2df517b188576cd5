"""Model constructors: spectra, symmetries, and the closed-form references."""

import numpy as np
import pytest

from degengeo.hermitian import frobenius_norm
from degengeo.models import (
    PauliString,
    example_3x3,
    example_pr,
    example_pr_reference,
    five_qubit_code,
    ising,
    one_local,
    pauli_matrix,
    ssh,
    ssh_hopping_disorder,
    transverse_perturbation,
    weyl_example,
)
from degengeo.swtransform import sw_decompose


def test_pauli_string_hand_values():
    xz = pauli_matrix("XZ")
    # X (x) Z: basis order 00, 01, 10, 11
    expected = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    np.testing.assert_array_equal(xz, expected)
    zy = pauli_matrix("ZY", coefficient=2.0)
    np.testing.assert_allclose(zy[:2, :2], 2.0 * pauli_matrix("Y")[:2, :2])
    np.testing.assert_allclose(zy[2:, 2:], -2.0 * pauli_matrix("Y")[:2, :2])


def test_pauli_string_validation():
    with pytest.raises(ValueError):
        PauliString(2, "XYZ")
    with pytest.raises(ValueError):
        PauliString(2, "XQ")


def test_constructors_exactly_hermitian():
    rng = np.random.default_rng(0)
    mats = [
        ssh(3, 0.4, 0.9),
        ssh_hopping_disorder(3, rng.standard_normal(5) + 1j * rng.standard_normal(5)),
        ising(3),
        transverse_perturbation(3, rng.standard_normal(3), rng.standard_normal(3)),
        five_qubit_code(),
        one_local(5, rng.standard_normal(15)),
        example_3x3(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
        example_pr(0.3, -0.2),
        weyl_example(0.1, -0.2, 0.3),
    ]
    for m in mats:
        assert np.max(np.abs(m - m.conj().T)) == 0.0


def test_ssh_dimerized_spectrum():
    vals = np.linalg.eigvalsh(ssh(4, 0.0, 1.0))
    np.testing.assert_allclose(
        vals, [-1, -1, -1, 0, 0, 1, 1, 1], atol=1e-12
    )


def test_ssh_small_pattern():
    h = ssh(2, 0.3, 0.7)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 1] = expected[1, 0] = 0.3
    expected[1, 2] = expected[2, 1] = 0.7
    expected[2, 3] = expected[3, 2] = 0.3
    np.testing.assert_array_equal(h, expected)


def test_ssh_disorder_direction_shape():
    rng = np.random.default_rng(1)
    n_cells = 4
    amps = rng.standard_normal(2 * n_cells - 1) + 1j * rng.standard_normal(
        2 * n_cells - 1
    )
    h = ssh_hopping_disorder(n_cells, amps)
    # tridiagonal, zero diagonal, 4N-2 real parameters
    assert np.max(np.abs(np.diag(h))) == 0.0
    assert np.max(np.abs(np.triu(h, 2))) == 0.0
    reals = np.concatenate([np.diag(h, 1).real, np.diag(h, 1).imag])
    assert reals.size == 4 * n_cells - 2


def test_ssh_chiral_symmetry():
    gamma = np.diag([(-1.0) ** i for i in range(8)])
    for h in (ssh(4, 0.2, 0.9), ssh(4, 0.0, 1.0)):
        np.testing.assert_allclose(gamma @ h @ gamma, -h, atol=1e-14)


def test_ising_ground_degeneracy():
    vals = np.linalg.eigvalsh(ising(3))
    assert vals[0] == pytest.approx(-2.0, abs=1e-12)
    assert vals[1] == pytest.approx(-2.0, abs=1e-12)
    assert vals[2] > vals[1] + 0.5


def test_transverse_perturbation_structure():
    rng = np.random.default_rng(2)
    h = transverse_perturbation(3, rng.standard_normal(3), rng.standard_normal(3))
    assert abs(np.trace(h)) <= 1e-12
    assert np.max(np.abs(h - h.conj().T)) == 0.0


def test_qubit_cap():
    with pytest.raises(ValueError, match="qubit count"):
        ising(7)


def test_five_qubit_ground_pair():
    vals = np.linalg.eigvalsh(five_qubit_code())
    assert vals[1] - vals[0] <= 1e-12
    assert vals[2] - vals[1] > 0.5


def test_one_local_zero():
    assert frobenius_norm(one_local(5, np.zeros(15))) == 0.0


def test_example_3x3_printed_form():
    h = example_3x3(v=0.1, x=0.2, y=0.3, z=0.4, p=0.5, q=0.6, r=0.7, s=0.8,
                    w=0.9)
    expected = np.array(
        [
            [0.5, 0.2 - 0.3j, 0.5 - 0.6j],
            [0.2 + 0.3j, -0.3, 0.7 - 0.8j],
            [0.5 + 0.6j, 0.7 + 0.8j, 1.9],
        ],
        dtype=complex,
    )
    np.testing.assert_allclose(h, expected, atol=1e-15)


def test_example_pr_origin():
    np.testing.assert_array_equal(
        example_pr(0.0, 0.0), np.diag([0.0, 0.0, 1.0]).astype(complex)
    )
    ref = example_pr_reference(0.0, 0.0)
    assert frobenius_norm(ref.s) == 0.0
    assert frobenius_norm(ref.b) == 0.0
    assert frobenius_norm(ref.h_eff) == 0.0
    assert ref.c == 0.0


def test_example_pr_reference_matches_decomposition():
    h0 = np.diag([0.0, 0.0, 1.0]).astype(complex)
    dec = sw_decompose(example_pr(0.3, 0.2), h0, 2)
    ref = example_pr_reference(0.3, 0.2)
    assert np.max(np.abs(dec.s - ref.s)) <= 1e-9
    assert np.max(np.abs(dec.b - ref.b)) <= 1e-9
    assert np.max(np.abs(dec.h_eff - ref.h_eff)) <= 1e-9
    assert dec.c == pytest.approx(ref.c, abs=1e-9)
    assert ref.residual <= 1e-12


def test_weyl_example_first_order_block():
    x, y, z = 0.12, -0.07, 0.31
    h = weyl_example(x, y, z)
    block = np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=complex)
    np.testing.assert_allclose(h[:2, :2], block, atol=1e-15)
