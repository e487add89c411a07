"""Eigensolver, spectral functions, polar factor, fidelity."""
from __future__ import annotations

import numpy as np
import pytest

from qrandcert import (
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    fidelity_sq,
    hermitian_eigen,
    matrix_log2_psd,
    matrix_sqrt_psd,
    polar_unitary,
    sqrt_fidelity,
)

rng = np.random.default_rng(20240817)


def random_hermitian(d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2.0


def test_eigen_matches_numpy_on_random_hermitians():
    for d in (1, 2, 3, 5, 8, 13):
        for _ in range(6):
            a = random_hermitian(d)
            res = hermitian_eigen(a)
            assert np.abs(res.eigenvalues - np.linalg.eigvalsh(a)).max() < 1e-10


def test_eigen_reconstructs_matrix():
    for d in (2, 4, 7):
        a = random_hermitian(d)
        res = hermitian_eigen(a)
        v, w = res.eigenvectors, res.eigenvalues
        assert np.abs((v * w) @ v.conj().T - a).max() < 1e-10
        assert np.abs(v.conj().T @ v - np.eye(d)).max() < 1e-10


def test_eigen_ascending_and_deterministic():
    a = random_hermitian(6)
    r1 = hermitian_eigen(a)
    r2 = hermitian_eigen(a.copy())
    assert (np.diff(r1.eigenvalues) >= -1e-14).all()
    assert np.abs(r1.eigenvectors - r2.eigenvectors).max() == 0.0


def test_eigen_phase_convention_real_positive():
    a = random_hermitian(5)
    v = hermitian_eigen(a).eigenvectors
    for i in range(5):
        lead = v[np.abs(v[:, i]) > 1e-10, i][0]
        assert abs(lead.imag) < 1e-12 and lead.real > 0.0


def test_eigen_rejects_bad_input():
    with pytest.raises(NotHermitian):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionMismatch):
        hermitian_eigen(np.zeros((2, 3)))


def test_sqrt_and_log_roundtrip():
    for d in (2, 3, 6):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        p = g @ g.conj().T
        r = matrix_sqrt_psd(p)
        assert np.abs(r @ r - p).max() < 1e-8 * max(1.0, np.abs(p).max())
        # log2 agrees with the scalar function on the spectrum
        res = hermitian_eigen(p)
        expected = (res.eigenvectors * np.log2(res.eigenvalues)) @ res.eigenvectors.conj().T
        assert np.abs(matrix_log2_psd(p) - expected).max() < 1e-9


def test_sqrt_rejects_negative_spectrum():
    with pytest.raises(NotPSD):
        matrix_sqrt_psd(np.diag([1.0, -0.5]))


def test_log2_zeroes_kernel_directions():
    p = np.diag([4.0, 0.0])
    out = matrix_log2_psd(p)
    assert np.abs(out - np.diag([2.0, 0.0])).max() < 1e-12


def test_polar_unitary_properties():
    for d in (2, 3, 5):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        u = polar_unitary(g)
        assert np.abs(u @ u.conj().T - np.eye(d)).max() < 1e-12
        # U^dag G is the PSD factor of the polar decomposition
        h = u.conj().T @ g
        assert np.abs(h - h.conj().T).max() < 1e-10
        assert np.linalg.eigvalsh((h + h.conj().T) / 2).min() > -1e-10
        # the polar factor maximises Re tr(U^dag G) over unitaries
        val = np.trace(u.conj().T @ g).real
        for _ in range(8):
            q = polar_unitary(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
            assert np.trace(q.conj().T @ g).real <= val + 1e-10


def test_polar_unitary_of_singular_matrix_is_unitary():
    g = np.zeros((3, 3), dtype=complex)
    g[0, 0] = 2.0
    u = polar_unitary(g)
    assert np.abs(u @ u.conj().T - np.eye(3)).max() < 1e-10


def test_fidelity_known_values_and_bounds():
    rho = np.diag([0.5, 0.5])
    pure0 = np.diag([1.0, 0.0])
    f = sqrt_fidelity(rho, pure0)
    assert abs(f - np.sqrt(0.5)) < 1e-12
    assert abs(fidelity_sq(rho, pure0) - 0.5) < 1e-12
    for _ in range(10):
        g1 = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        g2 = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = g1 @ g1.conj().T
        b = g2 @ g2.conj().T
        a /= np.trace(a).real
        b /= np.trace(b).real
        f_ab = sqrt_fidelity(a, b)
        assert 0.0 <= f_ab <= 1.0
        assert abs(f_ab - sqrt_fidelity(b, a)) < 1e-10
        assert abs(sqrt_fidelity(a, a) - 1.0) < 1e-10
