"""Timing comparison of the compiled and pure-Python eigensolver kernels.

Run from the repository root:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --dims 2 4 8 16 --repeats 200
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qrandcert import _kernel_py

try:
    from qrandcert import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def batch(d: int, n: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        out.append((g + g.conj().T) / 2.0)
    return out


def time_kernel(kernel, mats, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a in mats:
            kernel.jacobi_eigh(a)
        best = min(best, time.perf_counter() - t0)
    return best / len(mats)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 6, 8, 12])
    parser.add_argument("--batch", type=int, default=32, help="matrices per timing batch")
    parser.add_argument("--repeats", type=int, default=20, help="best-of repeats")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _kernel_c is None:
        print("compiled kernel not available; run `python3 setup.py build_ext --inplace`")
        print("timing the pure-Python kernel only\n")

    header = f"{'dim':>4} {'python (us)':>12}"
    if _kernel_c is not None:
        header += f" {'compiled (us)':>14} {'speedup':>8}"
    print(header)
    for d in args.dims:
        mats = batch(d, args.batch, args.seed)
        t_py = time_kernel(_kernel_py, mats, args.repeats)
        row = f"{d:>4} {t_py * 1e6:>12.1f}"
        if _kernel_c is not None:
            t_c = time_kernel(_kernel_c, mats, args.repeats)
            row += f" {t_c * 1e6:>14.1f} {t_py / t_c:>7.1f}x"
            w_c, v_c, _, _ = _kernel_c.jacobi_eigh(mats[0])
            w_p, v_p, _, _ = _kernel_py.jacobi_eigh(mats[0])
            drift = max(
                np.abs(np.asarray(w_c) - np.asarray(w_p)).max(),
                np.abs(np.asarray(v_c) - np.asarray(v_p)).max(),
            )
            if drift > 1e-13:
                row += f"  [twin drift {drift:.1e}]"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
