import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landauer.errors import DimensionMismatch, NotHermitian
from landauer.linalg import (hermitian_eig, jacobi_eigh, kron, partial_trace,
                             unitary_from_hamiltonian)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eig_pauli_z(method):
    w, v = hermitian_eig(SZ, method)
    np.testing.assert_allclose(w, [-1, 1])


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eig_identity(method):
    w, v = hermitian_eig(np.eye(3), method)
    np.testing.assert_allclose(w, [1, 1, 1])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eig_pauli_x_against_characteristic_polynomial(method):
    # lambda^2 - 1 = 0 ; eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2
    w, v = hermitian_eig(SX, method)
    np.testing.assert_allclose(w, [-1, 1], atol=1e-14)
    expected = np.array([[1, 1], [-1, 1]]) / math.sqrt(2)
    for k in range(2):
        overlap = abs(np.vdot(expected[:, k], v[:, k]))
        assert overlap == pytest.approx(1.0, abs=1e-12)


def test_not_hermitian_raises():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_small_asymmetry_is_symmetrized():
    m = SX.copy()
    m[0, 1] += 1e-12
    w, _ = hermitian_eig(m)
    np.testing.assert_allclose(w, [-1, 1], atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_reconstruction_random(n, seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, n)
    for method in ("lapack", "jacobi"):
        d = hermitian_eig(h, method)
        assert np.all(np.diff(d.eigenvalues) >= 0)
        assert np.max(np.abs(d.reconstruct() - h)) < 1e-10
        v = d.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-10


def test_jacobi_matches_lapack_spectrum():
    rng = np.random.default_rng(3)
    h = random_hermitian(rng, 30)
    w, _ = jacobi_eigh(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-11)


def test_unitary_at_zero_time():
    np.testing.assert_allclose(unitary_from_hamiltonian(SZ, 0.0), np.eye(2), atol=1e-15)


def test_unitary_pauli_z_quarter_period():
    u = unitary_from_hamiltonian(SZ, math.pi / 2)
    np.testing.assert_allclose(u, np.diag([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)]),
                               atol=1e-15)


def test_unitary_pauli_x_matches_rodrigues():
    # exp(-i t sx) = cos t I - i sin t sx
    for t in (0.3, 1.0, math.pi):
        expected = math.cos(t) * np.eye(2) - 1j * math.sin(t) * SX
        np.testing.assert_allclose(unitary_from_hamiltonian(SX, t), expected, atol=1e-14)
    np.testing.assert_allclose(unitary_from_hamiltonian(SX, math.pi), -np.eye(2), atol=1e-14)


def test_unitary_group_property():
    rng = np.random.default_rng(11)
    h = random_hermitian(rng, 6)
    u1 = unitary_from_hamiltonian(h, 0.7)
    u2 = unitary_from_hamiltonian(h, 1.9)
    u12 = unitary_from_hamiltonian(h, 2.6)
    assert np.max(np.abs(u1 @ u2 - u12)) < 1e-9
    assert np.max(np.abs(u12 @ u12.conj().T - np.eye(6))) < 1e-10


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
    np.testing.assert_array_equal(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))
    np.testing.assert_array_equal(kron(SZ, SZ), np.diag([1, -1, -1, 1]))


def test_kron_entry_layout_and_associativity():
    rng = np.random.default_rng(5)
    a, b, c = (rng.standard_normal((k, k + 1)) for k in (2, 3, 2))
    ab = kron(a, b)
    p, q = b.shape
    for i, j, k, l in [(0, 1, 2, 3), (1, 2, 0, 0), (1, 0, 1, 2)]:
        assert ab[i * p + k, j * q + l] == a[i, j] * b[k, l]
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) < 1e-14


def test_partial_trace_product_state():
    rho_s = np.diag([0.3, 0.7])
    rho_e = np.diag([0.5, 0.25, 0.25])
    joint = kron(rho_s, rho_e)
    np.testing.assert_allclose(partial_trace(joint, (2, 3), "E"), rho_e, atol=1e-15)
    np.testing.assert_allclose(partial_trace(joint, (2, 3), "S"), rho_s, atol=1e-15)


def test_partial_trace_bell_state():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    rho = np.outer(psi, psi.conj())
    np.testing.assert_allclose(partial_trace(rho, (2, 2), "S"), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_traces_agree():
    rng = np.random.default_rng(2)
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    for keep in "SE":
        assert abs(np.trace(partial_trace(rho, (2, 3), keep)) - 1) < 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(np.eye(5) / 5, (2, 3), "S")
