"""Adversarial guessing probability for fixed rank-one measurements.

Primal ascent over orthonormal bases (the geometric-coherence form),
an independent concave fidelity maximization as cross-check, closed-form
and line-search dual certificates, the adversary's optimal decomposition,
and state-discrimination checkers.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._neldermead import minimize
from .exceptions import BadMap, BracketTooWide, DimensionMismatch, NotRankOne
from .linalg import hermitian_eigen, matrix_sqrt_psd, polar_unitary
from .measurements import CoarseGraining, MeasurementBasis, coarse_grain
from .states import DensityMatrix

SUPPORT_CUT = 1e-12
_MM_TOL = 1e-12
_MM_CAP = 500
_MD_TOL = 1e-12
_MD_CAP = 300
GAP_THRESHOLD = 1e-5


@dataclass(frozen=True)
class Decomposition:
    """Sub-normalized PSD parts summing to the state; weights are traces."""

    parts: tuple
    weights: tuple


@dataclass(frozen=True)
class CertificateBracket:
    """Two-sided certificate: an achieved lower bound and a dual upper bound.

    witness_x dominates every measurement projector on the support of the
    state; tr(witness_x rho) equals `upper`.
    """

    lower: float
    upper: float
    witness_x: np.ndarray
    gap: float


@dataclass(frozen=True)
class GuessingResult:
    """Best guessing probability found, with witness and certificate."""

    value: float
    witness: Decomposition
    bracket: CertificateBracket
    basis_used: MeasurementBasis


@dataclass(frozen=True)
class HelstromWitness:
    """Per-outcome smallest eigenvalue of Y - sigma_j; all >= 0 certifies
    the candidate measurement optimal for discriminating the ensemble."""

    min_eigenvalues: np.ndarray


def pguess_optimal(rho: DensityMatrix) -> float:
    """Best guessing probability over all rank-one projective measurements:
    (tr sqrt(rho))^2 / d."""
    w = rho.eigen.eigenvalues
    return min(1.0, float(np.sqrt(w).sum() ** 2 / rho.dim))


def _gamma_matrix(rho: DensityMatrix, basis: MeasurementBasis) -> np.ndarray:
    """Columns gamma_i = sqrt(rho)|m_i>."""
    root = matrix_sqrt_psd(rho.eigen)
    return root @ basis.columns


def _mm_objective(g: np.ndarray, v: np.ndarray) -> float:
    return float((np.abs(np.einsum("ij,ij->j", g.conj(), v)) ** 2).sum())


def _mm_ascend(g: np.ndarray, v0: np.ndarray, cap: int = _MM_CAP):
    """Monotone majorize-maximize ascent of sum_i |gamma_i^H v_i|^2 over
    unitaries V. Returns (V, value, per-iteration values)."""
    v = v0
    values = [_mm_objective(g, v)]
    for _ in range(cap):
        c = np.einsum("ij,ij->j", g.conj(), v)
        v_new = polar_unitary(g * c[None, :])
        val = _mm_objective(g, v_new)
        if val < values[-1] - 1e-10:
            raise RuntimeError(f"ascent decreased: {values[-1]!r} -> {val!r}")
        if val < values[-1]:
            break
        improved = val - values[-1]
        v = v_new
        values.append(val)
        if improved < _MM_TOL:
            break
    return v, values[-1], values


def _pinv_sqrt_weights(w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(w)
    pos = w > SUPPORT_CUT
    out[pos] = 1.0 / np.sqrt(w[pos])
    return out


def mirror_descent_fidelity(rho: DensityMatrix, basis: MeasurementBasis, cap: int = _MD_CAP):
    """Maximize the squared fidelity between the state and measurement-diagonal
    states by exponentiated-gradient ascent on the simplex.

    Independent route to the same optimum as the unitary ascent: the
    objective is concave in the simplex weights. Returns (value, weights).
    """
    d = rho.dim
    u = basis.columns
    rho_m = u.conj().T @ rho.matrix @ u
    rho_m = 0.5 * (rho_m + rho_m.conj().T)
    s = np.full(d, 1.0 / d)

    def root_fid(s_vec):
        dd = np.sqrt(np.clip(s_vec, 0.0, None))
        b = (dd[:, None] * rho_m) * dd[None, :]
        w = np.clip(hermitian_eigen(b, tol=1e-8).eigenvalues, 0.0, None)
        return float(np.sqrt(w).sum())

    def gradient(s_vec):
        dd = np.sqrt(np.clip(s_vec, 0.0, None))
        b = (dd[:, None] * rho_m) * dd[None, :]
        e = hermitian_eigen(b, tol=1e-8)
        inv_root = (e.eigenvectors * _pinv_sqrt_weights(np.clip(e.eigenvalues, 0.0, None))) @ e.eigenvectors.conj().T
        m = rho_m @ (dd[:, None] * inv_root)
        grad = np.zeros(d)
        pos = dd > 1e-9
        grad[pos] = np.diag(m).real[pos] / (2.0 * dd[pos])
        return grad

    f = root_fid(s)
    for _ in range(cap):
        g = gradient(s)
        g = g - g.max()  # shift-invariant; keeps exponentials bounded
        f_prev, eta, accepted = f, 1.0, False
        for _ in range(20):
            cand = s * np.exp(eta * g)
            cand /= cand.sum()
            f_cand = root_fid(cand)
            if f_cand > f:
                s, f, accepted = cand, f_cand, True
                break
            eta *= 0.5
        if not accepted or f - f_prev < _MD_TOL:
            break
    return f**2, s


def _haar_unitary(d: int, rng) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return polar_unitary(g)


def eve_decomposition(rho: DensityMatrix, basis: MeasurementBasis) -> Decomposition:
    """The adversary's optimal ensemble for a rank-one measurement:
    parts sqrt(rho)|m_i><m_i|sqrt(rho)."""
    if not isinstance(basis, MeasurementBasis):
        raise NotRankOne("eve_decomposition needs a rank-one projective basis")
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    g = _gamma_matrix(rho, basis)
    parts = tuple(np.outer(g[:, i], g[:, i].conj()) for i in range(rho.dim))
    return Decomposition(parts, tuple(float(np.trace(p).real) for p in parts))


def _decomposition_from_unitary(g: np.ndarray, v: np.ndarray) -> Decomposition:
    """Parts (sqrt(rho)|v_i>)(<v_i|sqrt(rho)) for the basis columns of V.

    Note g here is sqrt(rho) itself (d x d), not the gamma matrix.
    """
    cols = g @ v
    parts = tuple(np.outer(cols[:, i], cols[:, i].conj()) for i in range(v.shape[1]))
    return Decomposition(parts, tuple(float(np.trace(p).real) for p in parts))


def verify_certificate(rho: DensityMatrix, basis, x: np.ndarray, support_projector=None):
    """Re-verify a dual witness: X must dominate every measurement element.

    Returns (feasible, upper, margins) where margins[i] is the smallest
    eigenvalue of X - M_i. With `support_projector` (d x r isometry), the
    check runs in support coordinates, matching certificates produced for
    rank-deficient states.
    """
    if isinstance(basis, MeasurementBasis):
        ops = [basis.projector(i) for i in range(basis.dim)]
    else:
        ops = [np.asarray(op, dtype=np.complex128) for op in basis]
    x = np.asarray(x, dtype=np.complex128)
    if support_projector is not None:
        vs = np.asarray(support_projector, dtype=np.complex128)
        ops = [vs.conj().T @ op @ vs for op in ops]
        x_c = vs.conj().T @ x @ vs
    else:
        x_c = x
    margins = np.array(
        [float(hermitian_eigen(x_c - op, tol=1e-8).eigenvalues[0]) for op in ops]
    )
    upper = float(np.trace(x @ rho.matrix).real)
    return bool(margins.min() >= -1e-9), upper, margins


def dual_certificate(rho: DensityMatrix, basis: MeasurementBasis) -> CertificateBracket:
    """Two-sided certificate for the guessing probability of a fixed basis.

    The lower bound is the value achieved by the measurement basis itself
    as the adversary's basis choice. When the equal-diagonal condition on
    sqrt(rho) holds, the scaled pseudo-inverse square root is dual feasible
    and closes the gap; otherwise a concave line search interpolates from
    the always-feasible uniform-scaling witness toward it.
    """
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    d = rho.dim
    e = rho.eigen
    mask = e.eigenvalues > SUPPORT_CUT
    ws = e.eigenvalues[mask]
    vs = e.eigenvectors[:, mask]
    r = int(mask.sum())
    t = float(np.sqrt(ws).sum())
    m_tilde = vs.conj().T @ basis.columns  # column i: support coordinates of |m_i>
    root_diag = (np.sqrt(ws)[:, None] * np.abs(m_tilde) ** 2).sum(axis=0)
    eps = t / d - root_diag
    lower = float((root_diag**2).sum())
    x_a = np.diag((t / d) / np.sqrt(ws)).astype(np.complex128)

    def margin(x_s):
        vals = []
        for i in range(d):
            mi = np.outer(m_tilde[:, i], m_tilde[:, i].conj())
            vals.append(float(hermitian_eigen(x_s - mi, tol=1e-8).eigenvalues[0]))
        return min(vals)

    if float(np.abs(eps).max()) < 1e-8:
        x_s = x_a
        upper = t**2 / d
    else:
        lam0 = float((np.abs(m_tilde) ** 2).sum(axis=0).max())
        base = lam0 * np.eye(r, dtype=np.complex128)
        lo, hi = 0.0, 1.0
        if margin(x_a) >= -1e-12:
            lo = 1.0
        else:
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if margin((1.0 - mid) * base + mid * x_a) >= -1e-12:
                    lo = mid
                else:
                    hi = mid
        x_s = (1.0 - lo) * base + lo * x_a
        upper = (1.0 - lo) * lam0 + lo * (t**2 / d)
    witness = vs @ x_s @ vs.conj().T
    return CertificateBracket(lower, float(upper), witness, float(upper - lower))


def pguess_fixed(
    rho: DensityMatrix,
    basis: MeasurementBasis,
    seed: int = 0,
    restarts: int = 32,
) -> GuessingResult:
    """Guessing probability of a fixed rank-one measurement.

    Maximizes sum_i |<m_i| sqrt(rho) |v_i>|^2 over orthonormal bases {v_i}
    by a monotone polar-factor ascent from a schedule of starts: the
    measurement basis itself, the identity, a start seeded by the concave
    fidelity maximization, and Haar-random unitaries. The returned bracket
    pairs the achieved value with an independent dual upper bound; a gap
    above 1e-5 triggers a BracketTooWide warning.
    """
    if not isinstance(basis, MeasurementBasis):
        raise NotRankOne("pguess_fixed needs a rank-one projective basis")
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    d = rho.dim
    root = matrix_sqrt_psd(rho.eigen)
    g = root @ basis.columns
    rng = np.random.default_rng(seed)
    md_value, md_weights = mirror_descent_fidelity(rho, basis)

    best_v, best_val = None, -np.inf
    for idx in range(max(1, restarts)):
        if idx == 0:
            v0 = basis.columns
        elif idx == 1:
            v0 = np.eye(d, dtype=np.complex128)
        elif idx == 2:
            v0 = polar_unitary(g * np.sqrt(np.clip(md_weights, 0.0, None))[None, :])
        else:
            v0 = _haar_unitary(d, rng)
        v, val, _ = _mm_ascend(g, v0)
        if val > best_val + 1e-15:
            best_v, best_val = v, val
    if md_value > best_val + 1e-9:
        # The concave route found more: re-ascend from its seed with a
        # larger budget so the witness still certifies the value.
        v, val, _ = _mm_ascend(
            g, polar_unitary(g * np.sqrt(np.clip(md_weights, 0.0, None))[None, :]), cap=5000
        )
        if val > best_val:
            best_v, best_val = v, val
    value = float(best_val)

    dual = dual_certificate(rho, basis)
    upper = max(dual.upper, value)  # guard roundoff inversions at closed gaps
    bracket = CertificateBracket(value, float(upper), dual.witness_x, float(upper - value))
    if bracket.gap > GAP_THRESHOLD:
        warnings.warn(
            f"primal-dual gap {bracket.gap:.3e} exceeds {GAP_THRESHOLD:.1e}; "
            "the reported value is bracketed, not certified optimal",
            BracketTooWide,
        )
    witness = _decomposition_from_unitary(root, best_v)
    return GuessingResult(
        value, witness, bracket, MeasurementBasis(d, best_v.T.copy())
    )


def helstrom_check(decomposition: Decomposition, candidate) -> HelstromWitness:
    """Discrimination-optimality witness for a candidate measurement.

    Forms Y = sum_i parts_i . Pi_i, Hermitizes it, and reports the smallest
    eigenvalue of Y - parts_j for every j; all >= 0 (up to -1e-8) certifies
    the candidate optimal for discriminating the ensemble.
    """
    parts = [np.asarray(p, dtype=np.complex128) for p in decomposition.parts]
    if isinstance(candidate, MeasurementBasis):
        ops = [candidate.projector(i) for i in range(candidate.dim)]
    else:
        ops = [np.asarray(op, dtype=np.complex128) for op in candidate]
    if len(parts) != len(ops):
        raise DimensionMismatch(f"{len(parts)} parts vs {len(ops)} candidate operators")
    d = parts[0].shape[0]
    if any(op.shape != (d, d) for op in ops):
        raise DimensionMismatch("candidate operator dimension differs from the parts")
    y = np.zeros((d, d), dtype=np.complex128)
    for p, op in zip(parts, ops):
        y += p @ op
    y = 0.5 * (y + y.conj().T)
    mins = np.array(
        [float(hermitian_eigen(y - p, tol=1e-8).eigenvalues[0]) for p in parts]
    )
    return HelstromWitness(mins)


def pretty_good_measurement(decomposition: Decomposition):
    """Measurement rho^{-1/2} rho_i rho^{-1/2} built from an ensemble,
    with the pseudo-inverse square root on the support of the total."""
    parts = [np.asarray(p, dtype=np.complex128) for p in decomposition.parts]
    total = sum(parts)
    e = hermitian_eigen(total, tol=1e-8)
    inv_root = (e.eigenvectors * _pinv_sqrt_weights(np.clip(e.eigenvalues, 0.0, None))) @ e.eigenvectors.conj().T
    return [inv_root @ p @ inv_root for p in parts]


def pguess_coarse_lower(
    rho: DensityMatrix, fine: MeasurementBasis, f: CoarseGraining, seed: int = 0
) -> float:
    """Certified lower bound on the guessing probability after merging
    outcomes: groups the fine-optimal witness by the label map. Never
    below the fine value (cross terms of PSD factors are non-negative).
    """
    result = pguess_fixed(rho, fine, seed=seed)
    coarse_ops = coarse_grain(fine, f)
    d = fine.dim
    missing = [i for i in range(d) if i not in f.outcome_map]
    if missing:
        raise BadMap(f"outcome map undefined on fine outcomes {missing}")
    labels = f.labels()
    value = 0.0
    for lab, op in zip(labels, coarse_ops):
        grouped = np.zeros((d, d), dtype=np.complex128)
        for i in range(d):
            if f.outcome_map[i] == lab:
                grouped += result.witness.parts[i]
        value += float(np.trace(op @ grouped).real)
    return value


def _givens_sweep(g: np.ndarray, v: np.ndarray) -> float:
    """One cyclic sweep of closed-form two-column rotations maximizing
    sum_i |gamma_i^H v_i|^2 in place; returns the objective after the sweep."""
    d = v.shape[1]
    for p in range(d):
        for q in range(p + 1, d):
            a = complex(g[:, p].conj() @ v[:, p])
            b = complex(g[:, p].conj() @ v[:, q])
            c1 = complex(g[:, q].conj() @ v[:, p])
            d1 = complex(g[:, q].conj() @ v[:, q])
            big_p = abs(a) ** 2 + abs(d1) ** 2
            big_q = abs(b) ** 2 + abs(c1) ** 2
            w = np.conj(a) * b - np.conj(c1) * d1
            if abs(w) < 1e-16 and big_q <= big_p:
                continue
            phase = np.conj(w) / abs(w) if abs(w) > 0.0 else 1.0
            two_theta = np.arctan2(2.0 * abs(w), big_p - big_q)
            ct, st = np.cos(two_theta / 2.0), np.sin(two_theta / 2.0)
            col_p = v[:, p].copy()
            v[:, p] = ct * col_p + st * phase * v[:, q]
            v[:, q] = -st * np.conj(phase) * col_p + ct * v[:, q]
    return _mm_objective(g, v)


def bruteforce_pguess(
    rho: DensityMatrix,
    basis: MeasurementBasis,
    seed: int = 0,
    restarts: int = 12,
    grid: int = 180,
) -> float:
    """Independent baseline for the guessing probability.

    Qubits: exhaustive grid over the (angle, phase) parameterization of
    orthonormal bases, refined by simplex search. Higher dimensions:
    cyclic closed-form plane rotations (coordinate ascent on the unitary
    group) from the identity and seeded Haar starts. Shares no code with
    the polar-factor ascent.
    """
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    d = rho.dim
    root = matrix_sqrt_psd(rho.eigen)
    g = root @ basis.columns
    if d == 2:
        ts = np.linspace(0.0, np.pi / 2.0, grid)
        ps = np.linspace(0.0, 2.0 * np.pi, 2 * grid, endpoint=False)
        tt, pp = np.meshgrid(ts, ps, indexing="ij")
        c, s = np.cos(tt), np.sin(tt)
        eip = np.exp(1j * pp)
        # f = |g00 c + g10 s e^{ip}|^2 + |-g01 s e^{-ip} + g11 c|^2
        f = (
            np.abs(g[0, 0].conj() * c + g[1, 0].conj() * s * eip) ** 2
            + np.abs(-g[0, 1].conj() * s * np.conj(eip) + g[1, 1].conj() * c) ** 2
        )
        idx = np.unravel_index(int(np.argmax(f)), f.shape)
        x0 = np.array([tt[idx], pp[idx]])

        def neg_obj(x):
            t, p = x
            v = np.array(
                [
                    [np.cos(t), -np.exp(-1j * p) * np.sin(t)],
                    [np.exp(1j * p) * np.sin(t), np.cos(t)],
                ]
            )
            return -_mm_objective(g, v)

        x, fx, _, _ = minimize(neg_obj, x0, scale=np.pi / (2 * grid), tol=1e-13)
        return float(max(f[idx], -fx))
    rng = np.random.default_rng(seed)
    best = -np.inf
    for idx in range(max(1, restarts)):
        if idx == 0:
            v = np.eye(d, dtype=np.complex128)
        else:
            z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            q, _ = np.linalg.qr(z)
            v = q.astype(np.complex128)
        prev = _mm_objective(g, v)
        for _ in range(200):
            val = _givens_sweep(g, v)
            if val - prev < 1e-13:
                break
            prev = val
        best = max(best, prev)
    return float(best)
