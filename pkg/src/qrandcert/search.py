"""Heuristic synthesis of optimal product measurements on two qubits.

Seeded random-restart simplex minimization of optimality-condition
residuals over the product-basis angle families, plus the enumeration
showing no product basis is unbiased to the omega-mixture eigenbasis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._neldermead import minimize
from .exceptions import NoSuccess, NotFourDim, OutOfRange
from .linalg import matrix_sqrt_psd
from .measurements import MeasurementBasis, product_basis
from .states import DensityMatrix, _omega_basis_vectors

TARGETS = ("hmin", "h", "hmax")
MODES = ("general", "restricted")


@dataclass(frozen=True)
class SearchResult:
    """Best product basis found for one optimality-condition target."""

    basis: MeasurementBasis
    residual: float
    target: str
    mode: str
    restarts_used: int
    seed: int


def _product_vectors(angles: np.ndarray, mode: str) -> np.ndarray:
    """Rows: the four product vectors for the angle tuple (no validation)."""
    if mode == "restricted":
        ta, pa, tb, pb = angles
        tc, pc = tb, pb
    else:
        ta, pa, tb, pb, tc, pc = angles
    ca, sa = np.cos(ta / 2.0), np.sin(ta / 2.0)
    cb, sb = np.cos(tb / 2.0), np.sin(tb / 2.0)
    cc, sc = np.cos(tc / 2.0), np.sin(tc / 2.0)
    ea, eb, ec = np.exp(1j * pa), np.exp(1j * pb), np.exp(1j * pc)
    a = np.array([ca, ea * sa])
    a_p = np.array([-np.conj(ea) * sa, ca])
    b = np.array([cb, eb * sb])
    b_p = np.array([-np.conj(eb) * sb, cb])
    c = np.array([cc, ec * sc])
    c_p = np.array([-np.conj(ec) * sc, cc])
    return np.stack([np.kron(a, b), np.kron(a, b_p), np.kron(a_p, c), np.kron(a_p, c_p)])


def _residual_fn(rho: DensityMatrix, target: str):
    """Sum of squared deviations of the chosen optimality condition."""
    if target == "hmin":
        op = matrix_sqrt_psd(rho.eigen)
        level = float(np.trace(op).real) / 4.0
    elif target == "h":
        op = rho.matrix
        level = 0.25
    elif target == "hmax":
        u_max = rho.eigen.eigenvectors[:, -1]
        op = np.outer(u_max, u_max.conj())
        level = 0.25
    else:
        raise OutOfRange(f"target must be one of {TARGETS}, got {target!r}")

    def residual(vectors: np.ndarray) -> float:
        diag = np.einsum("ij,jk,ik->i", vectors.conj(), op, vectors).real
        return float(((diag - level) ** 2).sum())

    return residual


def find_product_basis(
    rho: DensityMatrix,
    target: str,
    mode: str = "general",
    seed: int = 0,
    restarts: int = 200,
    tol: float = 1e-10,
) -> SearchResult:
    """Search the product-basis family for a basis meeting one condition.

    Minimizes the squared-residual objective over 6 (general) or 4
    (restricted) Bloch angles by Nelder-Mead from seeded random starts
    (the first start is the computational basis). Success means the
    residual of the returned, re-validated basis is at most `tol`;
    exhausting the restarts raises NoSuccess carrying the best result.
    """
    if rho.dim != 4:
        raise NotFourDim(f"product search needs a two-qubit state, got dim {rho.dim}")
    if mode not in MODES:
        raise OutOfRange(f"mode must be one of {MODES}, got {mode!r}")
    residual = _residual_fn(rho, target)
    n = 4 if mode == "restricted" else 6
    rng = np.random.default_rng(seed)

    def objective(angles):
        return residual(_product_vectors(angles, mode))

    best_x, best_f, used = None, np.inf, 0
    for idx in range(max(1, restarts)):
        used = idx + 1
        x0 = np.zeros(n) if idx == 0 else rng.uniform(0.0, 2.0 * np.pi, size=n)
        x, fx, _, _ = minimize(objective, x0, scale=0.3, tol=1e-14, max_evals=6000)
        if fx < best_f:
            best_x, best_f = x, fx
        if best_f <= tol:
            break
    basis = product_basis(best_x[0], best_x[1], mode, *best_x[2:])
    final = residual(basis.vectors)
    result = SearchResult(basis, float(final), target, mode, used, seed)
    if final > tol:
        raise NoSuccess(
            f"no product basis met target {target!r} in {mode} mode within "
            f"{restarts} restarts (best residual {final:.3e})",
            result=result,
        )
    return result


def verify_no_unbiased_product_basis():
    """Enumerate the candidate equatorial product bases and show none is
    unbiased to the omega-mixture eigenbasis.

    The unbiasedness constraints force cos(x) + cos(y) + cos(x-y) = 0 and
    cos(x) - cos(y) - cos(x-y) = 0 simultaneously, leaving exactly four
    (x, y) phase pairs. Each satisfies the trig system yet fails the
    remaining overlap requirement |<psi_3|a A>|^2 = 1/4. Returns one dict
    per pair with the trig residual and the achieved overlap.
    """
    psi3 = _omega_basis_vectors()[:, 2]
    pairs = [
        (np.pi / 2.0, 3.0 * np.pi / 4.0),
        (np.pi / 2.0, 7.0 * np.pi / 4.0),
        (3.0 * np.pi / 2.0, np.pi / 4.0),
        (3.0 * np.pi / 2.0, 5.0 * np.pi / 4.0),
    ]
    report = []
    for x, y in pairs:
        trig = max(
            abs(np.cos(x) + np.cos(y) + np.cos(x - y)),
            abs(np.cos(x) - np.cos(y) - np.cos(x - y)),
        )
        a = np.array([1.0, np.exp(1j * x)]) / np.sqrt(2.0)
        aa = np.array([1.0, np.exp(1j * y)]) / np.sqrt(2.0)
        overlap_sq = float(abs(psi3.conj() @ np.kron(a, aa)) ** 2)
        report.append(
            {
                "x": float(x),
                "y": float(y),
                "trig_residual": float(trig),
                "overlap_sq": overlap_sq,
                "deviation_from_quarter": float(abs(overlap_sq - 0.25)),
            }
        )
    return report
