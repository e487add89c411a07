"""Rank-one projective measurement bases.

Validation, unbiased-basis construction from the discrete Fourier matrix,
the one-parameter qutrit basis family with closed triangle phases, product
bases on two qubits, coarse-graining, and optimality-condition residuals.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .exceptions import (
    BadMap,
    DimensionMismatch,
    InfeasibleK,
    NotComplete,
    NotOrthonormal,
    OutOfRange,
)
from .linalg import matrix_sqrt_psd
from .states import DensityMatrix

ORTHO_TOL = 1e-10
COMPLETE_TOL = 1e-9
DEGENERACY_GAP = 1e-9
FEASIBILITY_TOL = 1e-8


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-one projective measurement: d orthonormal vectors, row i = |m_i>."""

    dim: int
    vectors: np.ndarray

    @property
    def columns(self) -> np.ndarray:
        """The basis as a unitary matrix with |m_i> in column i."""
        return self.vectors.T.copy()

    def projector(self, i: int) -> np.ndarray:
        v = self.vectors[i]
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class CoarseGraining:
    """Deterministic merging of fine outcomes: fine index -> coarse label."""

    outcome_map: dict

    def labels(self):
        """Coarse labels in order of first appearance over fine outcomes."""
        seen = []
        for i in sorted(self.outcome_map):
            lab = self.outcome_map[i]
            if lab not in seen:
                seen.append(lab)
        return seen


@dataclass(frozen=True)
class QutritFamilyParams:
    """Validated parameters of the qutrit basis family.

    gamma is non-increasing and non-negative; k lies in the feasibility
    window; theta1, theta2 are the triangle-closure phases on the branch
    with positive imaginary part for the first phasor.
    """

    gamma: tuple
    k: float
    theta1: float
    theta2: float


@dataclass(frozen=True)
class ConditionResiduals:
    """Residual vectors of the three optimality conditions for a basis.

    hmin_residuals[i] = tr(sqrt(rho))/d - <m_i|sqrt(rho)|m_i>  (sums to 0)
    h_residuals[i]    = 1/d - <m_i|rho|m_i>                    (sums to 0)
    hmax_residuals[i] = 1/d - |<m_i|u_max>|^2 for the top eigenvector
    hmax_degenerate_feasible reports whether some convex mixture of the
    top-eigenspace directions makes all hmax overlaps equal 1/d;
    hmax_witness_weights carries the mixture when it exists.
    """

    hmin_residuals: np.ndarray
    h_residuals: np.ndarray
    hmax_residuals: np.ndarray
    hmax_degenerate_feasible: bool
    hmax_witness_weights: np.ndarray | None


def basis_from_vectors(vectors, tol: float = ORTHO_TOL) -> MeasurementBasis:
    """Validate d complex vectors of dimension d as a projective basis."""
    v = np.asarray(vectors, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch(f"need d vectors of dimension d, got shape {v.shape}")
    d = v.shape[0]
    gram = v.conj() @ v.T
    if float(np.abs(gram - np.eye(d)).max()) > tol:
        raise NotOrthonormal(
            f"Gram deviation {np.abs(gram - np.eye(d)).max():.3e} exceeds {tol:.1e}"
        )
    res = v.T @ v.conj() - np.eye(d)
    if float(np.abs(res).max()) > COMPLETE_TOL:
        raise NotComplete(f"resolution-of-identity deviation {np.abs(res).max():.3e}")
    return MeasurementBasis(d, v)


def eigenbasis_descending(rho: DensityMatrix) -> MeasurementBasis:
    """Eigenbasis of the state ordered by non-increasing eigenvalue."""
    e = rho.eigen
    return basis_from_vectors(e.eigenvectors[:, ::-1].T)


def unbiased_basis(rho: DensityMatrix) -> MeasurementBasis:
    """A basis unbiased to the eigenbasis of the state.

    Columns of the eigenbasis transformed by the discrete Fourier matrix:
    every overlap with every eigenvector has squared modulus 1/d.
    """
    d = rho.dim
    v = rho.eigen.eigenvectors
    k = np.arange(d)
    f = np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)
    return basis_from_vectors((v @ f).T)


def qutrit_family_params(gamma, k: float) -> QutritFamilyParams:
    """Validate (gamma, k) and solve the closure phases theta1, theta2.

    The three phasors (1+a)e^{i theta1}, (1+b), (1+c)e^{i theta2} must sum
    to zero, with a = -(g2-g3)k, b = (g1-g3)k, c = -(g1-g2)k. Side lengths
    must satisfy the triangle condition; the phases follow from the law of
    cosines on the branch where the first phasor has non-negative
    imaginary part.
    """
    g = np.asarray(gamma, dtype=float)
    if g.shape != (3,):
        raise OutOfRange(f"gamma must have exactly 3 entries, got shape {g.shape}")
    g1, g2, g3 = (float(x) for x in g)
    if not (g1 >= g2 >= g3 >= 0.0):
        raise OutOfRange(f"gamma must be non-increasing and non-negative, got {g!r}")
    spread = g1 - g3
    if spread > 0.0:
        kmax = 0.5 / spread
        if not (-kmax - 1e-12 <= k <= kmax + 1e-12):
            raise InfeasibleK(f"k={k!r} outside the window [-{kmax!r}, {kmax!r}]")
    a = -(g2 - g3) * k
    b = (g1 - g3) * k
    c = -(g1 - g2) * k
    r1, r2, r3 = 1.0 + a, 1.0 + b, 1.0 + c
    for r in (r1, r2, r3):
        if r < -1e-12:
            raise InfeasibleK(f"negative squared modulus {r!r} at k={k!r}")
    r1, r2, r3 = (max(r, 0.0) for r in (r1, r2, r3))
    if not (abs(b - a) <= 1.0 + c + 1e-12 and 1.0 + c <= 2.0 + a + b + 1e-12):
        raise InfeasibleK(f"triangle condition fails at k={k!r}")
    cos1, sin1, cos3, sin3 = _closure_trig(r1, r2, r3)
    theta1 = float(np.arctan2(sin1, -cos1))
    theta2 = float(np.arctan2(-sin3, -cos3)) % (2.0 * np.pi)
    return QutritFamilyParams((g1, g2, g3), float(k), theta1, theta2)


def _closure_trig(r1: float, r2: float, r3: float):
    """Cos/sin of the two closure angles of the phasor triangle.

    The law of cosines alone loses half the digits near a flat triangle
    (arccos amplifies round-off at +-1), so the sines come from Kahan's
    stable area formula instead; sharing one area between both angles makes
    the imaginary part of the closure sum cancel identically.
    """
    sides = sorted((r1, r2, r3), reverse=True)
    sa, sb, sc = sides
    prod = (sa + (sb + sc)) * max(sc - (sa - sb), 0.0) * (sc + (sa - sb)) * (sa + (sb - sc))
    area = 0.25 * np.sqrt(max(prod, 0.0))
    cos1 = np.clip((r1**2 + r2**2 - r3**2) / (2.0 * r1 * r2), -1.0, 1.0)
    cos3 = np.clip((r3**2 + r2**2 - r1**2) / (2.0 * r2 * r3), -1.0, 1.0)
    sin1 = 2.0 * area / (r1 * r2)
    sin3 = 2.0 * area / (r2 * r3)
    return float(cos1), float(sin1), float(cos3), float(sin3)


def qutrit_family(gamma, k: float, rho_eigenbasis: MeasurementBasis) -> MeasurementBasis:
    """One-parameter family of qutrit bases tied to a state's eigenbasis.

    Coordinates are taken in the supplied eigenbasis, whose vectors must be
    ordered by non-increasing eigenvalue to match the ordering of gamma.
    k = 0 recovers the unbiased (Fourier) moduli.
    """
    if rho_eigenbasis.dim != 3:
        raise DimensionMismatch(f"qutrit family needs dim 3, got {rho_eigenbasis.dim}")
    p = qutrit_family_params(gamma, k)
    g1, g2, g3 = p.gamma
    a = -(g2 - g3) * p.k
    b = (g1 - g3) * p.k
    c = -(g1 - g2) * p.k
    r = np.clip(np.array([1.0 + a, 1.0 + b, 1.0 + c]), 0.0, None)
    moduli = np.sqrt(r / 3.0)
    cos1, sin1, cos3, sin3 = _closure_trig(r[0], r[1], r[2])
    z1 = complex(-cos1, sin1)
    z3 = complex(-cos3, -sin3)
    m1 = moduli.astype(np.complex128)
    m2 = moduli * np.array([z1 / abs(z1), 1.0, z3 / abs(z3)])
    m3 = np.cross(np.conj(m1), np.conj(m2))
    m3 /= np.linalg.norm(m3)
    idx = int(np.argmax(np.abs(m3) > 1e-10))
    m3 *= np.conj(m3[idx]) / abs(m3[idx])
    u = rho_eigenbasis.columns
    return basis_from_vectors(np.stack([u @ m1, u @ m2, u @ m3]))


def _bloch_vector(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])


def _bloch_perp(theta: float, phi: float) -> np.ndarray:
    return np.array([-np.exp(-1j * phi) * np.sin(theta / 2.0), np.cos(theta / 2.0)])


def product_basis(x: float, y: float, mode: str = "restricted", *extra) -> MeasurementBasis:
    """Two-qubit product basis from Bloch angles (theta, phi) per factor.

    restricted (4 angles: theta_a, phi_a, theta_b, phi_b) gives
    {|a,b>, |a,b_perp>, |a_perp,b>, |a_perp,b_perp>}; general (6 angles,
    additionally theta_c, phi_c) replaces the second factor under a_perp
    by c: {|a,b>, |a,b_perp>, |a_perp,c>, |a_perp,c_perp>}.
    """
    angles = (float(x), float(y)) + tuple(float(t) for t in extra)
    if mode == "restricted":
        if len(angles) != 4:
            raise OutOfRange(f"restricted mode needs 4 angles, got {len(angles)}")
        ta, pa, tb, pb = angles
        tc, pc = tb, pb
    elif mode == "general":
        if len(angles) != 6:
            raise OutOfRange(f"general mode needs 6 angles, got {len(angles)}")
        ta, pa, tb, pb, tc, pc = angles
    else:
        raise OutOfRange(f"mode must be 'general' or 'restricted', got {mode!r}")
    a, a_p = _bloch_vector(ta, pa), _bloch_perp(ta, pa)
    b, b_p = _bloch_vector(tb, pb), _bloch_perp(tb, pb)
    c, c_p = _bloch_vector(tc, pc), _bloch_perp(tc, pc)
    return basis_from_vectors(
        np.stack([np.kron(a, b), np.kron(a, b_p), np.kron(a_p, c), np.kron(a_p, c_p)])
    )


def coarse_grain(basis: MeasurementBasis, f: CoarseGraining):
    """Merge rank-one projectors by label: M_j = sum over f(i)=j of |m_i><m_i|.

    Returns the coarse projectors ordered by first appearance of the label.
    """
    d = basis.dim
    missing = [i for i in range(d) if i not in f.outcome_map]
    if missing:
        raise BadMap(f"outcome map undefined on fine outcomes {missing}")
    ops = []
    for lab in f.labels():
        op = np.zeros((d, d), dtype=np.complex128)
        for i in range(d):
            if f.outcome_map[i] == lab:
                op += basis.projector(i)
        ops.append(op)
    return ops


def _simplex_least_squares(c: np.ndarray, target: np.ndarray):
    """min ||C g - target|| over the probability simplex, by active sets.

    Enumerates support subsets, solves each equality-constrained least
    squares via its KKT system, and keeps the best interior-feasible
    candidate. The number of columns is small (degenerate eigenspace).
    """
    r = c.shape[1]
    best_g, best_res = None, np.inf
    for size in range(1, r + 1):
        for support in combinations(range(r), size):
            cs = c[:, support]
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = 2.0 * (cs.T @ cs)
            kkt[:size, size] = 1.0
            kkt[size, :size] = 1.0
            rhs = np.concatenate([2.0 * (cs.T @ target), [1.0]])
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
            g_s = sol[:size]
            if g_s.min() < -1e-12:
                continue
            g_s = np.clip(g_s, 0.0, None)
            tot = g_s.sum()
            if tot <= 0.0:
                continue
            g_s /= tot
            g = np.zeros(r)
            g[list(support)] = g_s
            res = float(np.abs(c @ g - target).max())
            if res < best_res:
                best_g, best_res = g, res
    return best_g, best_res


def condition_residuals(rho: DensityMatrix, basis: MeasurementBasis) -> ConditionResiduals:
    """Residuals of the three per-quantifier optimality conditions.

    When the top eigenvalue is degenerate (gap below 1e-9) the max-entropy
    condition becomes a small simplex feasibility problem over the
    top-eigenspace directions, solved by constrained least squares and
    reported at tolerance 1e-8. The non-degenerate case is the same test
    with a single direction.
    """
    if rho.dim != basis.dim:
        raise DimensionMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    d = rho.dim
    root = matrix_sqrt_psd(rho.eigen)
    m = basis.vectors
    hmin = np.trace(root).real / d - np.einsum("ij,jk,ik->i", m.conj(), root, m).real
    h = 1.0 / d - np.einsum("ij,jk,ik->i", m.conj(), rho.matrix, m).real
    w = rho.eigen.eigenvalues
    v = rho.eigen.eigenvectors
    top = w[-1]
    degenerate_idx = [j for j in range(d) if top - w[j] < DEGENERACY_GAP]
    u_max = v[:, -1]
    hmax = 1.0 / d - np.abs(m.conj() @ u_max) ** 2
    overlaps = np.abs(m.conj() @ v[:, degenerate_idx]) ** 2
    weights, res = _simplex_least_squares(overlaps, np.full(d, 1.0 / d))
    feasible = weights is not None and res <= FEASIBILITY_TOL
    return ConditionResiduals(hmin, h, hmax, bool(feasible), weights if feasible else None)
