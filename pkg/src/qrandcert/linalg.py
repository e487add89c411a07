"""Dense complex matrix kernel: Hermitian eigendecomposition, spectral
functions, polar decomposition, and fidelities.

All operations are pure functions on small dense matrices (d up to ~64).
Eigendecompositions go through the cyclic Jacobi kernel selected in
``_backend`` (compiled extension when built, pure-Python twin otherwise).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import jacobi_eigh
from .exceptions import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

HERMITICITY_TOL = 1e-10
# Eigenvalues in [PSD_CLIP, 0) are treated as exact zeros; below it is an error.
PSD_CLIP = -1e-10


@dataclass(frozen=True)
class HermitianEigen:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


def _as_matrix(a):
    """Accept a plain array or any object exposing a ``.matrix`` attribute."""
    if hasattr(a, "matrix"):
        a = a.matrix
    return np.asarray(a, dtype=np.complex128)


def _fix_phases(v):
    """Make the first non-negligible component of each column real positive."""
    v = v.copy()
    d = v.shape[1]
    for j in range(d):
        col = v[:, j]
        idx = int(np.argmax(np.abs(col) > 1e-10))
        pivot = col[idx]
        if abs(pivot) > 0.0:
            v[:, j] = col * (np.conj(pivot) / abs(pivot))
    return v


def hermitian_eigen(a, tol=HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (d, d) array_like
        Hermitian matrix (up to `tol` in max-norm).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    HermitianEigen
        Eigenvalues ascending; eigenvector columns orthonormal, each with a
        deterministic phase (first non-negligible component real positive).

    Raises
    ------
    NotHermitian
        If ``max |a - a^H|`` exceeds `tol`.
    NoConvergence
        If the sweep cap is reached before the off-diagonal falls below
        threshold.
    """
    a = _as_matrix(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    dev = float(np.abs(a - a.conj().T).max())
    if dev > tol:
        raise NotHermitian(f"deviation from Hermiticity {dev:.3e} exceeds {tol:.1e}")
    h = 0.5 * (a + a.conj().T)
    w, v, sweeps, converged = jacobi_eigh(h)
    if not converged:
        raise NoConvergence("Jacobi sweep cap reached")
    order = np.argsort(w, kind="stable")
    return HermitianEigen(w[order], _fix_phases(v[:, order]), sweeps)


def _spectral(a, fn, tol=HERMITICITY_TOL):
    """Apply a scalar function to the (clipped) spectrum of a PSD matrix."""
    eig = a if isinstance(a, HermitianEigen) else hermitian_eigen(a, tol=tol)
    w = eig.eigenvalues
    if w.min() < PSD_CLIP:
        raise NotPSD(f"matrix has eigenvalue {w.min():.3e} below {PSD_CLIP:.1e}")
    w = np.clip(w, 0.0, None)
    v = eig.eigenvectors
    return (v * fn(w)) @ v.conj().T


def matrix_sqrt_psd(a, tol=HERMITICITY_TOL):
    """Hermitian PSD square root: R with R @ R = a."""
    return _spectral(a, np.sqrt, tol=tol)


def matrix_log2_psd(a, tol=HERMITICITY_TOL):
    """Spectral base-2 logarithm on the support; zero eigenvalues map to 0."""

    def log2_on_support(w):
        out = np.zeros_like(w)
        pos = w > 0.0
        out[pos] = np.log2(w[pos])
        return out

    return _spectral(a, log2_on_support, tol=tol)


def polar_unitary(a):
    """Unitary polar factor of a square matrix.

    Maximizes Re tr(U^H a) over unitaries. For singular `a` the null-space
    columns are completed deterministically by Gram-Schmidt against the
    standard basis. A couple of Newton-Schulz sweeps push the unitarity
    residual below 1e-12.
    """
    a = _as_matrix(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    d = a.shape[0]
    eig = hermitian_eigen(a.conj().T @ a, tol=1e-6 * max(1.0, float(np.abs(a).max()) ** 2))
    s = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    v = eig.eigenvectors
    w = a @ v
    cutoff = 1e-12 * max(1.0, float(s.max()))
    q = np.zeros((d, d), dtype=np.complex128)
    kept = []
    for j in range(d):
        if s[j] > cutoff:
            q[:, j] = w[:, j] / s[j]
            kept.append(j)
    for j in range(d):
        if s[j] > cutoff:
            continue
        # complete with the first standard basis vector not already spanned
        for k in range(d):
            cand = np.zeros(d, dtype=np.complex128)
            cand[k] = 1.0
            for i in kept:
                cand -= q[:, i] * (q[:, i].conj() @ cand)
            nrm = np.linalg.norm(cand)
            if nrm > 0.5:
                q[:, j] = cand / nrm
                kept.append(j)
                break
    u = q @ v.conj().T
    for _ in range(4):
        res = u.conj().T @ u - np.eye(d)
        if float(np.abs(res).max()) <= 1e-13:
            break
        u = u @ (np.eye(d) - 0.5 * res)
    return u


def sqrt_fidelity(rho, sigma):
    """Root fidelity tr sqrt(sqrt(sigma) rho sqrt(sigma)), symmetric in its
    arguments; returns a real number in [0, 1]."""
    rho = _as_matrix(rho)
    sigma = _as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"state shapes differ: {rho.shape} vs {sigma.shape}")
    rt = matrix_sqrt_psd(sigma)
    inner = rt @ rho @ rt
    inner = 0.5 * (inner + inner.conj().T)
    w = hermitian_eigen(inner).eigenvalues
    val = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    return min(max(val, 0.0), 1.0)


def fidelity_sq(rho, sigma):
    """Squared (Uhlmann) fidelity: ``sqrt_fidelity(rho, sigma) ** 2``."""
    return sqrt_fidelity(rho, sigma) ** 2
