"""Hand-rolled Nelder-Mead simplex minimizer with shrink restarts.

Small, dependency-free, deterministic. Used by the product-basis search,
the brute-force guessing baseline, and the qubit max-entropy oracle.
"""
from __future__ import annotations

import numpy as np

_ALPHA = 1.0  # reflection
_GAMMA = 2.0  # expansion
_RHO = 0.5  # contraction
_SIGMA = 0.5  # shrink


def _initial_simplex(x0: np.ndarray, scale: float) -> np.ndarray:
    n = x0.size
    pts = np.tile(x0, (n + 1, 1))
    for i in range(n):
        pts[i + 1, i] += scale
    return pts


def minimize(
    fn,
    x0,
    scale: float = 0.1,
    tol: float = 1e-10,
    max_evals: int = 20000,
    restarts: int = 2,
):
    """Minimize fn over R^n from x0.

    Returns (x_best, f_best, evals, converged). After the simplex collapses
    (value spread below tol) it is re-seeded around the incumbent at a tenth
    of the scale, up to `restarts` times; converged reports whether the last
    simplex collapsed within budget.
    """
    x0 = np.asarray(x0, dtype=float)
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        return float(fn(x))

    best_x, best_f = x0.copy(), call(x0)
    cur_scale = scale
    converged = False
    for _ in range(restarts + 1):
        pts = _initial_simplex(best_x, cur_scale)
        vals = np.array([best_f] + [call(p) for p in pts[1:]])
        converged = False
        while evals < max_evals:
            order = np.argsort(vals, kind="stable")
            pts, vals = pts[order], vals[order]
            if vals[-1] - vals[0] < tol:
                converged = True
                break
            centroid = pts[:-1].mean(axis=0)
            xr = centroid + _ALPHA * (centroid - pts[-1])
            fr = call(xr)
            if fr < vals[0]:
                xe = centroid + _GAMMA * (xr - centroid)
                fe = call(xe)
                if fe < fr:
                    pts[-1], vals[-1] = xe, fe
                else:
                    pts[-1], vals[-1] = xr, fr
            elif fr < vals[-2]:
                pts[-1], vals[-1] = xr, fr
            else:
                if fr < vals[-1]:
                    xc = centroid + _RHO * (xr - centroid)
                else:
                    xc = centroid + _RHO * (pts[-1] - centroid)
                fc = call(xc)
                if fc < min(fr, vals[-1]):
                    pts[-1], vals[-1] = xc, fc
                else:
                    for i in range(1, len(pts)):
                        pts[i] = pts[0] + _SIGMA * (pts[i] - pts[0])
                        vals[i] = call(pts[i])
        i = int(np.argmin(vals))
        if vals[i] < best_f:
            best_x, best_f = pts[i].copy(), float(vals[i])
        cur_scale *= 0.1
        if evals >= max_evals:
            break
    return best_x, best_f, evals, converged
