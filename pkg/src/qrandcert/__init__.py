"""Intrinsic randomness of quantum states against a quantum adversary.

Computes how many secret random bits a projective measurement extracts
from a finite-dimensional state under three quantifiers (conditional
min-, von Neumann, and max-entropy), synthesizes measurements achieving
the optima, and emits independently checkable optimality certificates.
"""
from ._backend import BACKEND
from .entropies import (
    MaxEntropyResult,
    OptimalValues,
    conditional_h,
    conditional_hmax,
    optimal_values,
    psecr_oracle_qubit,
    von_neumann_entropy,
)
from .exceptions import (
    BadMap,
    BadRank,
    BracketTooWide,
    DimensionMismatch,
    InfeasibleK,
    InvalidWeights,
    NoConvergence,
    NoSuccess,
    NotComplete,
    NotFourDim,
    NotHermitian,
    NotOrthonormal,
    NotPSD,
    NotRankOne,
    OutOfRange,
    ParseError,
    QrandcertError,
    TraceNotOne,
)
from .guessing import (
    CertificateBracket,
    Decomposition,
    GuessingResult,
    HelstromWitness,
    bruteforce_pguess,
    dual_certificate,
    eve_decomposition,
    helstrom_check,
    mirror_descent_fidelity,
    pguess_coarse_lower,
    pguess_fixed,
    pguess_optimal,
    pretty_good_measurement,
    verify_certificate,
)
from .linalg import (
    HermitianEigen,
    fidelity_sq,
    hermitian_eigen,
    matrix_log2_psd,
    matrix_sqrt_psd,
    polar_unitary,
    sqrt_fidelity,
)
from .measurements import (
    CoarseGraining,
    ConditionResiduals,
    MeasurementBasis,
    QutritFamilyParams,
    basis_from_vectors,
    coarse_grain,
    condition_residuals,
    eigenbasis_descending,
    product_basis,
    qutrit_family,
    qutrit_family_params,
    unbiased_basis,
)
from .search import SearchResult, find_product_basis, verify_no_unbiased_product_basis
from .serialize import (
    basis_from_json,
    basis_to_json,
    dump_report,
    load_basis,
    load_json,
    load_state,
    matrix_from_json,
    matrix_to_json,
    state_from_json,
    state_to_json,
)
from .states import (
    DensityMatrix,
    PureBipartiteVector,
    density_from_matrix,
    partial_trace_e,
    purify,
    qubit_m_state,
    random_density,
    tensor_with_pure_aux,
    two_qubit_diag_state,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadMap",
    "BadRank",
    "BracketTooWide",
    "CertificateBracket",
    "CoarseGraining",
    "ConditionResiduals",
    "Decomposition",
    "DensityMatrix",
    "DimensionMismatch",
    "GuessingResult",
    "HelstromWitness",
    "HermitianEigen",
    "InfeasibleK",
    "InvalidWeights",
    "MaxEntropyResult",
    "MeasurementBasis",
    "NoConvergence",
    "NoSuccess",
    "NotComplete",
    "NotFourDim",
    "NotHermitian",
    "NotOrthonormal",
    "NotPSD",
    "NotRankOne",
    "OptimalValues",
    "OutOfRange",
    "ParseError",
    "PureBipartiteVector",
    "QrandcertError",
    "QutritFamilyParams",
    "SearchResult",
    "TraceNotOne",
    "basis_from_json",
    "basis_from_vectors",
    "basis_to_json",
    "bruteforce_pguess",
    "coarse_grain",
    "condition_residuals",
    "conditional_h",
    "conditional_hmax",
    "density_from_matrix",
    "dual_certificate",
    "dump_report",
    "eigenbasis_descending",
    "eve_decomposition",
    "fidelity_sq",
    "find_product_basis",
    "helstrom_check",
    "hermitian_eigen",
    "load_basis",
    "load_json",
    "load_state",
    "matrix_from_json",
    "matrix_log2_psd",
    "matrix_sqrt_psd",
    "matrix_to_json",
    "mirror_descent_fidelity",
    "optimal_values",
    "partial_trace_e",
    "pguess_coarse_lower",
    "pguess_fixed",
    "pguess_optimal",
    "polar_unitary",
    "pretty_good_measurement",
    "product_basis",
    "psecr_oracle_qubit",
    "purify",
    "qubit_m_state",
    "qutrit_family",
    "qutrit_family_params",
    "random_density",
    "sqrt_fidelity",
    "state_from_json",
    "state_to_json",
    "tensor_with_pure_aux",
    "two_qubit_diag_state",
    "unbiased_basis",
    "verify_certificate",
    "verify_no_unbiased_product_basis",
    "von_neumann_entropy",
]
