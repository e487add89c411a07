# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Jacobi eigensolver kernel.

Same rotation formulas and sweep order as ``_kernel_py.py``; keep the two
in lockstep.
"""
import numpy as np

cimport cython
from libc.math cimport fabs, sqrt

BACKEND_NAME = "compiled"

cdef double _OFF_TOL = 1e-13
cdef int _MAX_SWEEPS = 100


def jacobi_eigh(a):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns (w, v, sweeps, converged) exactly like the pure-Python twin.
    """
    A_arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t d = A_arr.shape[0]
    V_arr = np.eye(d, dtype=np.complex128)
    if d == 1:
        return np.array([A_arr[0, 0].real]), V_arr, 0, True

    cdef double complex[:, ::1] A = A_arr
    cdef double complex[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, i, sweep
    cdef int sweeps = 0
    cdef bint converged = False
    cdef double scale, off, r, app, aqq, theta, t, c, s, m
    cdef double complex apq, phase, sp, spc, tp, tq

    for sweep in range(_MAX_SWEEPS):
        scale = 1.0
        for i in range(d):
            m = fabs(A[i, i].real)
            if m > scale:
                scale = m
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                m = abs(A[p, q])
                if m > off:
                    off = m
        if off <= _OFF_TOL * scale:
            converged = True
            break
        sweeps += 1
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                r = abs(apq)
                if r <= _OFF_TOL * scale * 1e-2:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                phase = apq / r
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()

                for i in range(d):
                    tp = A[i, p]
                    tq = A[i, q]
                    A[i, p] = c * tp - spc * tq
                    A[i, q] = sp * tp + c * tq
                for i in range(d):
                    tp = A[p, i]
                    tq = A[q, i]
                    A[p, i] = c * tp - sp * tq
                    A[q, i] = spc * tp + c * tq
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                A[p, q] = 0.0
                A[q, p] = 0.0

                for i in range(d):
                    tp = V[i, p]
                    tq = V[i, q]
                    V[i, p] = c * tp - spc * tq
                    V[i, q] = sp * tp + c * tq

    w = np.empty(d, dtype=np.float64)
    for i in range(d):
        w[i] = A[i, i].real
    return w, V_arr, sweeps, converged
