"""Closed-form optima, dephased von Neumann entropy, max-entropy solver."""
from __future__ import annotations

import numpy as np
import pytest

from qrandcert import (
    CoarseGraining,
    DimensionMismatch,
    NotRankOne,
    coarse_grain,
    conditional_h,
    conditional_hmax,
    density_from_matrix,
    eigenbasis_descending,
    matrix_sqrt_psd,
    optimal_values,
    psecr_oracle_qubit,
    qubit_m_state,
    random_density,
    unbiased_basis,
    von_neumann_entropy,
)

from helpers import haar_basis, sigma_x_basis, spectrum_state

rng = np.random.default_rng(31)


def test_von_neumann_entropy_known_values():
    assert abs(von_neumann_entropy(qubit_m_state(1.0))) < 1e-12
    assert abs(von_neumann_entropy(qubit_m_state(0.0)) - 1.0) < 1e-12
    s = -0.8 * np.log2(0.8) - 0.2 * np.log2(0.2)
    assert abs(von_neumann_entropy(qubit_m_state(0.6)) - s) < 1e-12


def test_optimal_values_closed_forms():
    vals = optimal_values(qubit_m_state(0.6))
    assert abs(vals.p_guess_star - 0.9) < 1e-12
    assert abs(vals.h_min_star - (-np.log2(0.9))) < 1e-12
    s = -0.8 * np.log2(0.8) - 0.2 * np.log2(0.2)
    assert abs(vals.h_star - (1.0 - s)) < 1e-12
    assert abs(vals.h_max_star - (1.0 + np.log2(0.8))) < 1e-12
    for seed in range(20):
        d = 2 + seed % 4
        rho = random_density(d, seed=seed)
        vals = optimal_values(rho)
        t = np.trace(matrix_sqrt_psd(rho.matrix)).real
        lam_max = rho.eigen.eigenvalues.max()
        assert abs(vals.p_guess_star - t * t / d) < 1e-10
        assert abs(vals.h_min_star + np.log2(vals.p_guess_star)) < 1e-12
        assert abs(vals.h_star - (np.log2(d) - von_neumann_entropy(rho))) < 1e-10
        assert abs(vals.h_max_star - (np.log2(d) + np.log2(lam_max))) < 1e-10
        # ordering of the three quantifiers
        assert vals.h_min_star <= vals.h_star + 1e-9
        assert vals.h_star <= vals.h_max_star + 1e-9


def test_conditional_h_reaches_the_closed_form_on_unbiased_bases():
    for seed in range(10):
        d = 2 + seed % 4
        rho = random_density(d, seed=200 + seed)
        h = conditional_h(rho, unbiased_basis(rho))
        assert abs(h - (np.log2(d) - von_neumann_entropy(rho))) < 1e-9
        assert abs(conditional_h(rho, eigenbasis_descending(rho))) < 1e-9


def test_conditional_h_sigma_x_frozen_value():
    rho = qubit_m_state(0.6)
    s = -0.8 * np.log2(0.8) - 0.2 * np.log2(0.2)
    assert abs(conditional_h(rho, sigma_x_basis()) - (1.0 - s)) < 1e-12


def test_conditional_h_accepts_coarse_projectors():
    rho = random_density(4, seed=9)
    basis = haar_basis(4, rng)
    fine = conditional_h(rho, basis)
    ops = coarse_grain(basis, CoarseGraining({0: 0, 1: 0, 2: 1, 3: 1}))
    coarse = conditional_h(rho, ops)
    assert coarse <= fine + 1e-9


def test_hmax_solver_qubit_exact_values():
    rho = qubit_m_state(0.6)
    res = conditional_hmax(rho, sigma_x_basis())
    assert abs(res.p_secr - 1.6) < 1e-9
    assert abs(res.h_max - np.log2(1.6)) < 1e-9
    assert abs(np.trace(res.sigma_star.matrix).real - 1.0) < 1e-10
    res = conditional_hmax(rho, eigenbasis_descending(rho))
    assert abs(res.p_secr - 1.0) < 1e-9


def test_hmax_solver_reaches_closed_form_on_unbiased_bases():
    for seed in range(8):
        d = 2 + seed % 4
        rho = spectrum_state(d, seed=300 + seed)
        res = conditional_hmax(rho, unbiased_basis(rho))
        lam_max = rho.eigen.eigenvalues.max()
        assert abs(res.p_secr - d * lam_max) < 1e-8
        assert abs(res.h_max - (np.log2(d) + np.log2(lam_max))) < 1e-8


def test_hmax_iterates_never_decrease():
    for seed in range(6):
        d = 2 + seed % 3
        rho = random_density(d, seed=400 + seed)
        trace: list = []
        conditional_hmax(rho, haar_basis(d, rng), _trace=trace)
        assert len(trace) >= 1
        assert (np.diff(np.array(trace)) >= -1e-15).all()


def test_hmax_rejects_bad_inputs():
    rho = qubit_m_state(0.6)
    with pytest.raises(NotRankOne):
        conditional_hmax(rho, [np.eye(2)])
    with pytest.raises(DimensionMismatch):
        conditional_hmax(rho, unbiased_basis(random_density(3, seed=1)))


def test_qubit_oracle_matches_solver():
    rho = qubit_m_state(0.6)
    val = psecr_oracle_qubit(rho, sigma_x_basis(), grid_resolution=5e-3)
    assert abs(val - 1.6) < 2e-3
    # a tilted basis away from all closed-form cases
    theta = 0.7
    basis_vecs = np.array(
        [
            [np.cos(theta / 2), np.sin(theta / 2)],
            [-np.sin(theta / 2), np.cos(theta / 2)],
        ]
    )
    from qrandcert import basis_from_vectors

    basis = basis_from_vectors(basis_vecs)
    solver = conditional_hmax(rho, basis).p_secr
    oracle = psecr_oracle_qubit(rho, basis, grid_resolution=5e-3)
    assert abs(solver - oracle) < 2e-3
    assert solver >= oracle - 2e-3  # solver must not undershoot the grid


def test_hmax_upper_bounded_by_closed_form():
    # no basis can beat the optimum d * lam_max
    for seed in range(8):
        d = 2 + seed % 3
        rho = random_density(d, seed=500 + seed)
        lam_max = rho.eigen.eigenvalues.max()
        res = conditional_hmax(rho, haar_basis(d, rng))
        assert res.p_secr <= d * lam_max + 1e-8
