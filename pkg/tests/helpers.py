"""Shared sampling helpers for the test suite. All sampling is seeded."""
from __future__ import annotations

import numpy as np

from qrandcert import (
    DensityMatrix,
    MeasurementBasis,
    basis_from_vectors,
    density_from_matrix,
    polar_unitary,
)


def haar_basis(d: int, rng) -> MeasurementBasis:
    """Random rank-one projective basis from a Haar-ish unitary."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    u = polar_unitary(g)
    return basis_from_vectors(u.T)


def sigma_x_basis() -> MeasurementBasis:
    return basis_from_vectors(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))


def spectrum_state(
    d: int, seed: int, min_eig: float = 0.02, gap: float = 5e-3, spread: float = 0.0
) -> DensityMatrix:
    """Full-rank state with a well-separated spectrum and Haar eigenbasis.

    Rejection-samples a Dirichlet spectrum until all eigenvalues exceed
    `min_eig`, consecutive gaps exceed `gap`, and the top-to-bottom spread
    exceeds `spread`; deterministic per seed.
    """
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        lam = np.sort(rng.dirichlet(np.ones(d)))[::-1]
        if lam.min() >= min_eig and np.diff(-lam).min() >= gap and lam[0] - lam[-1] >= spread:
            break
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    u = polar_unitary(g)
    return density_from_matrix((u * lam) @ u.conj().T)
