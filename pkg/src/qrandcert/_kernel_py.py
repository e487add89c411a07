"""Pure-Python twin of the compiled Jacobi eigensolver kernel.

Keep the rotation formulas and sweep order in lockstep with ``_kernel.pyx``:
both backends must produce the same decomposition for the same input.
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_OFF_TOL = 1e-13
_MAX_SWEEPS = 100


def jacobi_eigh(a):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    a : (d, d) complex ndarray, assumed Hermitian (not checked here).

    Returns
    -------
    w : (d,) float64 eigenvalues, unsorted.
    v : (d, d) complex128 unitary with eigenvector columns, unsorted.
    sweeps : int, sweeps performed.
    converged : bool, False when the sweep cap was hit.
    """
    A = np.array(a, dtype=np.complex128)
    d = A.shape[0]
    V = np.eye(d, dtype=np.complex128)
    if d == 1:
        return np.array([A[0, 0].real]), V, 0, True

    sweeps = 0
    converged = False
    for _ in range(_MAX_SWEEPS):
        scale = max(1.0, float(np.abs(np.diagonal(A).real).max()))
        off = float(np.abs(A - np.diag(np.diagonal(A))).max())
        if off <= _OFF_TOL * scale:
            converged = True
            break
        sweeps += 1
        skip = _OFF_TOL * scale * 1e-2
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                phase = apq / r
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * np.conj(phase)

                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - spc * col_q
                A[:, q] = sp * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - sp * row_q
                A[q, :] = spc * row_p + c * row_q
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                A[p, q] = 0.0
                A[q, p] = 0.0

                col_p = V[:, p].copy()
                col_q = V[:, q].copy()
                V[:, p] = c * col_p - spc * col_q
                V[:, q] = sp * col_p + c * col_q

    return np.diagonal(A).real.copy(), V, sweeps, converged
