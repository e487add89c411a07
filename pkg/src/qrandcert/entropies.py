"""Entropic quantifiers of intrinsic randomness.

Closed-form optima over all rank-one projective measurements, the
fixed-measurement conditional von Neumann entropy, and the
fixed-measurement conditional max-entropy via a concave maximization
over the adversary's marginal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._neldermead import minimize
from .exceptions import DimensionMismatch, NoConvergence, NotRankOne
from .linalg import hermitian_eigen, matrix_sqrt_psd
from .measurements import MeasurementBasis
from .states import DensityMatrix, density_from_matrix

_FP_TOL = 1e-10
_FP_MAX_ITERS = 10**4
_TERM_FLOOR = 1e-14
_GAP_TOL = 1e-10
_POLISH_CAP = 500


@dataclass(frozen=True)
class OptimalValues:
    """Best achievable values over all rank-one projective measurements."""

    p_guess_star: float
    h_min_star: float
    h_star: float
    h_max_star: float


@dataclass(frozen=True)
class MaxEntropyResult:
    """Outcome of the conditional max-entropy maximization.

    p_secr is the optimal squared sum of root overlaps; sigma_star the
    maximizing adversary marginal; iterations counts fixed-point plus
    polishing steps.
    """

    p_secr: float
    h_max: float
    sigma_star: DensityMatrix
    iterations: int


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Base-2 von Neumann entropy, with 0 log 0 = 0."""
    w = rho.eigen.eigenvalues
    pos = w[w > 0.0]
    return float(-(pos * np.log2(pos)).sum())


def optimal_values(rho: DensityMatrix) -> OptimalValues:
    """Closed-form optima: (tr sqrt(rho))^2/d, and the entropy triple."""
    d = rho.dim
    w = rho.eigen.eigenvalues
    # clip the round-off excess above 1 so -log2 stays non-negative
    p_star = min(1.0, float(np.sqrt(w).sum() ** 2 / d))
    h_min = float(-np.log2(p_star)) + 0.0  # avoid IEEE -0.0
    h = float(np.log2(d) - von_neumann_entropy(rho))
    h_max = float(np.log2(d) + np.log2(w[-1]))
    return OptimalValues(p_star, h_min, h, h_max)


def _dephased_entropy(rho: DensityMatrix, measurement) -> float:
    """Entropy of the state dephased by a projective measurement."""
    if isinstance(measurement, MeasurementBasis):
        if measurement.dim != rho.dim:
            raise DimensionMismatch(
                f"state dim {rho.dim} vs basis dim {measurement.dim}"
            )
        m = measurement.vectors
        probs = np.einsum("ij,jk,ik->i", m.conj(), rho.matrix, m).real
        probs = probs[probs > 0.0]
        return float(-(probs * np.log2(probs)).sum())
    d = rho.dim
    deph = np.zeros((d, d), dtype=np.complex128)
    for op in measurement:
        op = np.asarray(op, dtype=np.complex128)
        if op.shape != (d, d):
            raise DimensionMismatch(f"operator shape {op.shape} vs dim {d}")
        deph += op @ rho.matrix @ op
    w = np.clip(hermitian_eigen(deph).eigenvalues, 0.0, None)
    pos = w[w > 0.0]
    return float(-(pos * np.log2(pos)).sum())


def conditional_h(rho: DensityMatrix, measurement) -> float:
    """Conditional von Neumann entropy of the outcome given the adversary.

    Equals the entropy produced by dephasing in the measurement minus the
    entropy of the state; `measurement` is a rank-one basis or a list of
    coarse projectors.
    """
    return _dephased_entropy(rho, measurement) - von_neumann_entropy(rho)


def _gamma_vectors(rho: DensityMatrix, basis: MeasurementBasis) -> np.ndarray:
    """Rows: gamma_x = sqrt(rho)|m_x> (the adversary's unnormalized states,
    expressed in the system space)."""
    root = matrix_sqrt_psd(rho.eigen)
    return basis.vectors @ root.T  # row x equals root @ m_x


def _root_overlap_sum(gammas: np.ndarray, sigma: np.ndarray) -> float:
    q = np.einsum("xi,ij,xj->x", gammas.conj(), sigma, gammas).real
    return float(np.sqrt(np.clip(q, 0.0, None)).sum())


def _linearization(gammas: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """T(sigma) = sum_x |gamma_x><gamma_x| / sqrt(q_x), small q_x dropped."""
    q = np.einsum("xi,ij,xj->x", gammas.conj(), sigma, gammas).real
    keep = q >= _TERM_FLOOR
    scaled = gammas[keep] / (q[keep] ** 0.25)[:, None]
    return scaled.T @ scaled.conj()


def conditional_hmax(
    rho: DensityMatrix, basis: MeasurementBasis, _trace: list | None = None
) -> MaxEntropyResult:
    """Conditional max-entropy of the outcome given the adversary.

    Maximizes (sum_x sqrt(<gamma_x|sigma|gamma_x>))^2 over density matrices
    sigma, with gamma_x = sqrt(rho)|m_x>. The objective is concave; a
    monotone multiplicative fixed point is followed by linearization
    (Frank-Wolfe) polishing, and the final gap certifies the value.
    When given, `_trace` accumulates every accepted objective value.
    """
    if not isinstance(basis, MeasurementBasis):
        raise NotRankOne("conditional_hmax needs a rank-one projective basis")
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    d = rho.dim
    gammas = _gamma_vectors(rho, basis)
    sigma = np.eye(d, dtype=np.complex128) / d
    g = _root_overlap_sum(gammas, sigma)
    if _trace is not None:
        _trace.append(g)
    iterations = 0
    for _ in range(_FP_MAX_ITERS):
        iterations += 1
        t = _linearization(gammas, sigma)
        cand = t @ sigma @ t
        tr = np.trace(cand).real
        if tr <= 0.0:
            break
        cand /= tr
        cand = 0.5 * (cand + cand.conj().T)
        g_new = _root_overlap_sum(gammas, cand)
        backtracks = 0
        while g_new < g - 1e-15 and backtracks < 6:
            cand = 0.5 * (cand + sigma)
            g_new = _root_overlap_sum(gammas, cand)
            backtracks += 1
        if g_new < g:
            break
        sigma, delta, g = cand, g_new**2 - g**2, g_new
        if _trace is not None:
            _trace.append(g)
        if abs(delta) < _FP_TOL:
            break
    # Linearization polish: move toward the top eigendirection of T until
    # the concavity gap certifies the optimum.
    for _ in range(_POLISH_CAP):
        t = _linearization(gammas, sigma)
        e = hermitian_eigen(t, tol=1e-8)
        lam_top = float(e.eigenvalues[-1])
        gap = 0.5 * (lam_top - g)
        if (g + gap) ** 2 - g**2 < _GAP_TOL:
            break
        iterations += 1
        v = e.eigenvectors[:, -1]
        step = np.outer(v, v.conj())
        eta, improved = 1.0, False
        for _ in range(24):
            cand = (1.0 - eta) * sigma + eta * step
            g_new = _root_overlap_sum(gammas, cand)
            if g_new > g:
                sigma, g, improved = 0.5 * (cand + cand.conj().T), g_new, True
                if _trace is not None:
                    _trace.append(g)
                break
            eta *= 0.5
        if not improved:
            break
    t = _linearization(gammas, sigma)
    lam_top = float(hermitian_eigen(t, tol=1e-8).eigenvalues[-1])
    certified_gap = max(0.0, 0.5 * (lam_top - g))
    if ((g + certified_gap) ** 2 - g**2) > 1e-6 and iterations >= _FP_MAX_ITERS:
        raise NoConvergence(
            f"max-entropy solver gap {certified_gap:.3e} after {iterations} iterations"
        )
    p_secr = float(g**2)
    return MaxEntropyResult(
        p_secr,
        float(np.log2(p_secr)),
        density_from_matrix(sigma, tol=1e-8),
        iterations,
    )


def _bloch_sigma(theta: float, phi: float, r: float) -> np.ndarray:
    n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    return 0.5 * (np.eye(2) + r * (n[0] * sx + n[1] * sy + n[2] * sz))


def psecr_oracle_qubit(
    rho: DensityMatrix, basis: MeasurementBasis, grid_resolution: float = 1e-3
) -> float:
    """Exhaustive qubit oracle for the max-entropy objective.

    Scans adversary marginals sigma(n, r) over a Bloch-sphere direction
    grid at the given angular resolution, with an exact concave line
    search in the radius r for every direction, then refines the best
    grid point by a local simplex search. Independent of the fixed-point
    solver.
    """
    if rho.dim != 2 or basis.dim != 2:
        raise DimensionMismatch("the grid oracle is defined for qubits only")
    gammas = _gamma_vectors(rho, basis)
    a = np.einsum("xi,xi->x", gammas.conj(), gammas).real  # squared norms
    v = np.stack(
        [
            2.0 * (gammas[:, 0].conj() * gammas[:, 1]).real,
            2.0 * (gammas[:, 0].conj() * gammas[:, 1]).imag,
            (np.abs(gammas[:, 0]) ** 2 - np.abs(gammas[:, 1]) ** 2),
        ],
        axis=1,
    )  # row x: Bloch vector of |gamma_x><gamma_x|

    thetas = np.arange(0.0, np.pi + grid_resolution, grid_resolution)
    phis = np.arange(0.0, 2.0 * np.pi, grid_resolution)

    def value_given_projection(proj):
        """Exact max over r in [0,1] of sum_x sqrt((a_x + r*proj_x)/2).

        proj has shape (..., n_outcomes); concave in r, solved by ternary
        search vectorized over directions.
        """
        lo = np.zeros(proj.shape[:-1])
        hi = np.ones(proj.shape[:-1])
        for _ in range(30):
            r1 = lo + (hi - lo) / 3.0
            r2 = hi - (hi - lo) / 3.0
            f1 = np.sqrt(np.clip((a + r1[..., None] * proj) / 2.0, 0.0, None)).sum(-1)
            f2 = np.sqrt(np.clip((a + r2[..., None] * proj) / 2.0, 0.0, None)).sum(-1)
            take = f1 < f2
            lo = np.where(take, r1, lo)
            hi = np.where(take, hi, r2)
        r = 0.5 * (lo + hi)
        f = np.sqrt(np.clip((a + r[..., None] * proj) / 2.0, 0.0, None)).sum(-1)
        return f, r

    best = (-np.inf, 0.0, 0.0, 0.0)  # (g, theta, phi, r)
    chunk = max(1, int(2e6 / max(1, phis.size)))
    for start in range(0, thetas.size, chunk):
        th = thetas[start : start + chunk]
        n = np.empty((th.size, phis.size, 3))
        n[..., 0] = np.sin(th)[:, None] * np.cos(phis)[None, :]
        n[..., 1] = np.sin(th)[:, None] * np.sin(phis)[None, :]
        n[..., 2] = np.cos(th)[:, None] * np.ones_like(phis)[None, :]
        proj = n @ v.T  # (..., x) = n . v_x
        f, r = value_given_projection(proj)
        idx = np.unravel_index(int(np.argmax(f)), f.shape)
        if f[idx] > best[0]:
            best = (float(f[idx]), float(th[idx[0]]), float(phis[idx[1]]), float(r[idx]))

    def neg_obj(params):
        theta, phi, r = params
        r = min(max(r, 0.0), 1.0)
        n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        q = (a + r * (v @ n)) / 2.0
        return -float(np.sqrt(np.clip(q, 0.0, None)).sum())

    x, fx, _, _ = minimize(neg_obj, np.array(best[1:]), scale=2.0 * grid_resolution, tol=1e-12)
    g = max(best[0], -fx)
    return float(g**2)
