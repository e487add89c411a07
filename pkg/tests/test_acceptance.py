"""Acceptance gate: thirteen end-to-end checks with stated tolerances.

Each test prints one `criterion N: PASS` / `criterion N: FAIL` line (visible
with `pytest -s`; the test name carries the same number for `-v` output).
"""
from __future__ import annotations

import time
from contextlib import contextmanager

import numpy as np
import pytest

from qrandcert import (
    CoarseGraining,
    InfeasibleK,
    basis_from_vectors,
    bruteforce_pguess,
    coarse_grain,
    conditional_h,
    conditional_hmax,
    condition_residuals,
    eigenbasis_descending,
    eve_decomposition,
    find_product_basis,
    helstrom_check,
    pguess_coarse_lower,
    pguess_fixed,
    pguess_optimal,
    polar_unitary,
    pretty_good_measurement,
    psecr_oracle_qubit,
    qubit_m_state,
    qutrit_family,
    random_density,
    tensor_with_pure_aux,
    two_qubit_diag_state,
    unbiased_basis,
    verify_no_unbiased_product_basis,
    von_neumann_entropy,
)

from helpers import sigma_x_basis, spectrum_state

# generic bases legitimately carry loose dual brackets; the values are
# still what the criteria compare
pytestmark = pytest.mark.filterwarnings("ignore::qrandcert.exceptions.BracketTooWide")


@contextmanager
def criterion(n: int):
    try:
        yield
    except BaseException:
        print(f"criterion {n}: FAIL")
        raise
    print(f"criterion {n}: PASS")


def seeded_basis(d: int, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return basis_from_vectors(polar_unitary(g).T)


def weights4(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        w = np.sort(rng.dirichlet(np.ones(4)))[::-1]
        if w.min() >= 0.02 and (w[0] - w[1]) >= 5e-3:
            return w
    raise RuntimeError("weight sampler exhausted")


def test_criterion_01_qubit_sigma_x_closed_form():
    with criterion(1):
        t0 = time.monotonic()
        sx = sigma_x_basis()
        for m in (0.0, 0.25, 0.6, 0.8, 1.0):
            res = pguess_fixed(qubit_m_state(m), sx, seed=0)
            expect = 0.5 * (1.0 + np.sqrt(1.0 - m * m))
            assert abs(res.value - expect) <= 1e-7, (m, res.value, expect)
        assert time.monotonic() - t0 < 1.0


def test_criterion_02_unbiased_bases_reach_the_optimum():
    with criterion(2):
        t0 = time.monotonic()
        for i in range(50):
            d = 2 + i % 4
            rho = random_density(d, seed=2000 + i)
            res = pguess_fixed(rho, unbiased_basis(rho), seed=0)
            assert abs(res.value - pguess_optimal(rho)) <= 1e-6, (i, d)
            assert res.bracket.gap <= 1e-5, (i, d, res.bracket.gap)
        assert time.monotonic() - t0 < 30.0


def test_criterion_03_independent_routes_agree():
    with criterion(3):
        rng = np.random.default_rng(3000)
        for i in range(20):
            d = 2 + i % 2
            rho = random_density(d, seed=3000 + i)
            basis = seeded_basis(d, rng)
            a = pguess_fixed(rho, basis, seed=0).value
            b = bruteforce_pguess(rho, basis, seed=0)
            assert abs(a - b) <= 1e-5, (i, d, a, b)


def test_criterion_04_value_never_below_universal_bound():
    with criterion(4):
        rng = np.random.default_rng(3000)
        for i in range(100):
            d = 2 + i % 4
            rho = random_density(d, seed=4000 + i)
            basis = seeded_basis(d, rng)
            res = pguess_fixed(rho, basis, seed=0, restarts=4)
            assert res.value >= pguess_optimal(rho) - 1e-7, (i, d)


def test_criterion_05_quadratic_improvement_bound():
    with criterion(5):
        rng = np.random.default_rng(3000)
        kept, tries = 0, 0
        while kept < 30:
            d = 2 + tries % 3
            rho = random_density(d, seed=5000 + tries)
            basis = seeded_basis(d, rng)
            tries += 1
            assert tries < 200, "sampler exhausted"
            eps = condition_residuals(rho, basis).hmin_residuals
            if np.abs(eps).max() <= 1e-3:
                continue
            kept += 1
            res = pguess_fixed(rho, basis, seed=0, restarts=4)
            floor = pguess_optimal(rho) + float(eps @ eps)
            assert res.value >= floor - 1e-7, (tries, d, res.value, floor)


def test_criterion_06_von_neumann_closed_form():
    with criterion(6):
        for i in range(50):
            d = 2 + i % 4
            rho = random_density(d, seed=6000 + i)
            h = conditional_h(rho, unbiased_basis(rho))
            expect = np.log2(d) - von_neumann_entropy(rho)
            assert abs(h - expect) <= 1e-9, (i, d, h, expect)
            assert abs(conditional_h(rho, eigenbasis_descending(rho))) <= 1e-9, (i, d)


def test_criterion_07_max_entropy_closed_form_and_oracle():
    with criterion(7):
        for i in range(50):
            d = 2 + i % 4
            rho = spectrum_state(d, seed=7000 + i, gap=1e-3)
            lam_max = rho.eigen.eigenvalues.max()
            basis = unbiased_basis(rho)
            res = conditional_hmax(rho, basis)
            expect = np.log2(d) + np.log2(lam_max)
            assert abs(res.h_max - expect) <= 1e-5, (i, d, res.h_max, expect)
            if d == 2:
                oracle = psecr_oracle_qubit(rho, basis, grid_resolution=5e-3)
                assert abs(res.p_secr - oracle) <= 2e-3, (i, res.p_secr, oracle)


def test_criterion_08_qutrit_family_identities():
    with criterion(8):
        fracs = (-0.95, -0.5, 0.3, 0.7, 1.0)
        for i in range(20):
            rho = spectrum_state(3, seed=8000 + i, spread=0.15)
            lam = np.sort(rho.eigen.eigenvalues)[::-1]
            eig = eigenbasis_descending(rho)
            p_star = pguess_optimal(rho)
            s = von_neumann_entropy(rho)
            for f in fracs:
                gam = np.sqrt(lam)
                basis = qutrit_family(gam, f * 0.5 / (gam[0] - gam[2]), eig)
                res = condition_residuals(rho, basis)
                assert np.abs(res.hmin_residuals).max() <= 1e-10, (i, f)
                assert np.abs(res.h_residuals).max() > 1e-4, (i, f)
                val = pguess_fixed(rho, basis, seed=0).value
                assert abs(val - p_star) <= 1e-6, (i, f, val, p_star)

                basis = qutrit_family(lam, f * 0.5 / (lam[0] - lam[2]), eig)
                res = condition_residuals(rho, basis)
                assert np.abs(res.h_residuals).max() <= 1e-10, (i, f)
                h = conditional_h(rho, basis)
                assert abs(h - (np.log2(3) - s)) <= 1e-8, (i, f, h)

                gam = np.array([lam[0], (lam[1] + lam[2]) / 2, (lam[1] + lam[2]) / 2])
                basis = qutrit_family(gam, f * 0.5 / (gam[0] - gam[2]), eig)
                res = condition_residuals(rho, basis)
                assert np.abs(res.hmax_residuals).max() <= 1e-10, (i, f)
            # the window boundary is accepted; beyond it is rejected
            gam = np.sqrt(lam)
            kmax = 0.5 / (gam[0] - gam[2])
            qutrit_family(gam, kmax, eig)
            qutrit_family(gam, -kmax, eig)
            for bad in (1.05 * kmax, -1.05 * kmax):
                try:
                    qutrit_family(gam, bad, eig)
                except InfeasibleK:
                    continue
                raise AssertionError(f"k={bad} accepted outside the window")


def test_criterion_09_product_search_all_targets_and_modes():
    with criterion(9):
        t0 = time.monotonic()
        for i in range(20):
            rho = two_qubit_diag_state(weights4(9000 + i))
            for target in ("hmin", "h", "hmax"):
                for mode in ("restricted", "general"):
                    out = find_product_basis(rho, target, mode=mode, seed=0, restarts=200)
                    assert out.residual <= 1e-10, (i, target, mode, out.residual)
        assert time.monotonic() - t0 < 300.0


def test_criterion_10_no_unbiased_product_basis():
    with criterion(10):
        rows = verify_no_unbiased_product_basis()
        assert len(rows) == 4
        for r in rows:
            assert r["trig_residual"] <= 1e-12, r
            assert r["deviation_from_quarter"] > 0.01, r


def test_criterion_11_coarse_graining_monotonicity():
    with criterion(11):
        rng = np.random.default_rng(1100)
        for i in range(50):
            d = 3 + i % 3
            rho = random_density(d, seed=1100 + i)
            basis = seeded_basis(d, rng)
            labels = [int(x) for x in rng.integers(0, 2, size=d)]
            if len(set(labels)) < 2:
                labels[0] = 1 - labels[0]
            f = CoarseGraining(dict(enumerate(labels)))
            fine_h = conditional_h(rho, basis)
            coarse_h = conditional_h(rho, coarse_grain(basis, f))
            assert coarse_h <= fine_h + 1e-9, (i, d, coarse_h, fine_h)
            v_fine = pguess_fixed(rho, basis, seed=0).value
            v_coarse = pguess_coarse_lower(rho, basis, f, seed=0)
            assert v_coarse >= v_fine - 1e-9, (i, d, v_coarse, v_fine)


def test_criterion_12_pure_auxiliary_factorization():
    with criterion(12):
        for i in range(10):
            d = 2 + i % 3
            rho = random_density(d, seed=1200 + i)
            base = pguess_optimal(rho)
            for d_a in (2, 3):
                big = pguess_optimal(tensor_with_pure_aux(rho, d_a))
                assert abs(big - base / d_a) <= 1e-12, (i, d, d_a, big, base)


def test_criterion_13_ensemble_witnesses():
    with criterion(13):
        rng = np.random.default_rng(1300)
        # pretty-good measurement inverts the adversary ensemble (full rank)
        for i in range(10):
            d = 2 + i % 3
            rho = random_density(d, seed=1250 + i)
            basis = seeded_basis(d, rng)
            pgm = pretty_good_measurement(eve_decomposition(rho, basis))
            for j in range(d):
                assert np.abs(pgm[j] - basis.projector(j)).max() <= 1e-9, (i, j)
        # discrimination witness is PSD exactly when the min-entropy
        # condition holds, and flags every sampled violation
        rng = np.random.default_rng(1300)
        kept, tries = 0, 0
        while kept < 20:
            d = 2 + tries % 3
            rho = random_density(d, seed=1300 + tries)
            basis = seeded_basis(d, rng)
            tries += 1
            assert tries < 200, "sampler exhausted"
            eps = condition_residuals(rho, basis).hmin_residuals
            if np.abs(eps).max() <= 1e-3:
                continue
            kept += 1
            wit = helstrom_check(eve_decomposition(rho, basis), basis)
            assert wit.min_eigenvalues.min() < -1e-8, (tries, d)
        for i in range(10):
            d = 2 + i % 3
            rho = random_density(d, seed=1350 + i)
            basis = unbiased_basis(rho)
            assert np.abs(condition_residuals(rho, basis).hmin_residuals).max() < 1e-8
            wit = helstrom_check(eve_decomposition(rho, basis), basis)
            assert wit.min_eigenvalues.min() >= -1e-8, (i, d)
        # frozen counterexample: the eigenbasis is suboptimal for the
        # adversary ensemble of the unbiased measurement
        rho = qubit_m_state(0.6)
        dec = eve_decomposition(rho, sigma_x_basis())
        wit = helstrom_check(dec, eigenbasis_descending(rho))
        assert wit.min_eigenvalues.min() < -1e-8
        assert np.abs(wit.min_eigenvalues - (-0.2)).max() <= 1e-9
