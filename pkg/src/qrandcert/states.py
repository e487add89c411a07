"""Validated density matrices, named states, random sampling, purification."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    BadRank,
    DimensionMismatch,
    InvalidWeights,
    NotPSD,
    OutOfRange,
    TraceNotOne,
)
from .linalg import HermitianEigen, hermitian_eigen

TRACE_TOL = 1e-10
PSD_TOL = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A validated d-dimensional quantum state.

    The eigendecomposition is computed lazily on first access and cached;
    eigenvalues are ascending and clipped to be non-negative.
    """

    dim: int
    matrix: np.ndarray
    _eigen_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def eigen(self) -> HermitianEigen:
        if not self._eigen_cache:
            e = hermitian_eigen(self.matrix)
            w = np.clip(e.eigenvalues, 0.0, None)
            self._eigen_cache.append(HermitianEigen(w, e.eigenvectors, e.sweeps))
        return self._eigen_cache[0]


@dataclass(frozen=True)
class PureBipartiteVector:
    """Unit vector on a dim_a x dim_e bipartite space, E-indices minor."""

    dim_a: int
    dim_e: int
    amplitudes: np.ndarray


def density_from_matrix(raw, tol: float = 1e-10) -> DensityMatrix:
    """Validate a raw complex matrix as a density matrix.

    Raises NotHermitian, NotPSD, or TraceNotOne when the input fails the
    corresponding check at tolerance `tol`; Hermiticity is checked inside
    the eigendecomposition.
    """
    a = np.asarray(raw, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    e = hermitian_eigen(a, tol=max(tol, 1e-10))
    if e.eigenvalues.min() < min(-tol, PSD_TOL):
        raise NotPSD(f"minimum eigenvalue {e.eigenvalues.min():.3e}")
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > max(tol, TRACE_TOL):
        raise TraceNotOne(f"trace is {tr!r}")
    h = 0.5 * (a + a.conj().T)
    w = np.clip(e.eigenvalues, 0.0, None)
    dm = DensityMatrix(d, h)
    dm._eigen_cache.append(HermitianEigen(w, e.eigenvectors, e.sweeps))
    return dm


def qubit_m_state(m: float) -> DensityMatrix:
    """Qubit diag((1+m)/2, (1-m)/2) for a bias parameter 0 <= m <= 1."""
    if not (0.0 <= m <= 1.0):
        raise OutOfRange(f"m must lie in [0, 1], got {m!r}")
    return density_from_matrix(np.diag([(1.0 + m) / 2.0, (1.0 - m) / 2.0]))


def _omega_basis_vectors() -> np.ndarray:
    """Columns: the four two-qubit vectors built from cube roots of unity.

    psi_1 = |00>, and psi_{2..4} have a zero |00>-component with the
    remaining amplitudes (1, w^j, w^{2j})/sqrt(3) over |01>, |10>, |11>.
    """
    w = np.exp(2j * np.pi / 3.0)
    cols = np.zeros((4, 4), dtype=np.complex128)
    cols[0, 0] = 1.0
    for j in range(3):
        cols[1:, j + 1] = np.array([1.0, w**j, w ** (2 * j)]) / np.sqrt(3.0)
    return cols


def two_qubit_diag_state(weights) -> DensityMatrix:
    """Mixture of the four omega-basis two-qubit vectors with given weights."""
    lam = np.asarray(weights, dtype=float)
    if lam.shape != (4,):
        raise InvalidWeights(f"need exactly 4 weights, got shape {lam.shape}")
    if lam.min() < 0.0 or abs(lam.sum() - 1.0) > 1e-10:
        raise InvalidWeights(f"weights must be non-negative and sum to 1, got {lam!r}")
    cols = _omega_basis_vectors()
    rho = (cols * lam) @ cols.conj().T
    return density_from_matrix(rho)


def random_density(dim: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """Ginibre-induced random state of exact rank (default: full rank)."""
    if rank is None:
        rank = dim
    if not (1 <= rank <= dim):
        raise BadRank(f"rank must satisfy 1 <= rank <= {dim}, got {rank!r}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return density_from_matrix(rho)


def purify(rho: DensityMatrix) -> PureBipartiteVector:
    """Canonical purification sum_k sqrt(w_k) |u_k>|k> with E-side
    amplitudes in the computational basis."""
    e = rho.eigen
    d = rho.dim
    amps = np.zeros(d * d, dtype=np.complex128)
    for k in range(d):
        wk = e.eigenvalues[k]
        if wk <= 0.0:
            continue
        amps += np.sqrt(wk) * np.kron(e.eigenvectors[:, k], _unit(d, k))
    amps /= np.linalg.norm(amps)
    return PureBipartiteVector(d, d, amps)


def _unit(d: int, k: int) -> np.ndarray:
    v = np.zeros(d, dtype=np.complex128)
    v[k] = 1.0
    return v


def partial_trace_e(psi: PureBipartiteVector) -> np.ndarray:
    """Reduced state on A of a pure bipartite vector (trace out E)."""
    m = psi.amplitudes.reshape(psi.dim_a, psi.dim_e)
    return m @ m.conj().T


def tensor_with_pure_aux(rho: DensityMatrix, d_a: int) -> DensityMatrix:
    """Tensor the state with a d_a-dimensional pure auxiliary |0><0|."""
    if d_a < 1:
        raise DimensionMismatch(f"auxiliary dimension must be >= 1, got {d_a!r}")
    aux = np.zeros((d_a, d_a), dtype=np.complex128)
    aux[0, 0] = 1.0
    return density_from_matrix(np.kron(rho.matrix, aux))
