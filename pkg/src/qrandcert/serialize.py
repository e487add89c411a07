"""JSON schemas for states, measurements, and reports.

Complex numbers are [re, im] pairs; matrices are row-major nested lists.
"""
from __future__ import annotations

import json

import numpy as np

from .exceptions import ParseError
from .measurements import MeasurementBasis, basis_from_vectors
from .states import DensityMatrix, density_from_matrix


def _complex_to_pair(z: complex):
    return [float(z.real), float(z.imag)]


def _pair_to_complex(obj) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) for v in obj)
    ):
        raise ParseError(f"expected a [re, im] pair, got {obj!r}")
    return complex(obj[0], obj[1])


def matrix_to_json(a: np.ndarray):
    return [[_complex_to_pair(complex(z)) for z in row] for row in np.asarray(a)]


def matrix_from_json(rows, dim: int) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"expected {dim} matrix rows, got {type(rows).__name__}")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"matrix row {i} does not have {dim} entries")
        for j, entry in enumerate(row):
            out[i, j] = _pair_to_complex(entry)
    return out


def state_to_json(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "matrix": matrix_to_json(rho.matrix)}


def state_from_json(obj, tol: float = 1e-10) -> DensityMatrix:
    if not isinstance(obj, dict) or "dim" not in obj or "matrix" not in obj:
        raise ParseError("state JSON needs keys 'dim' and 'matrix'")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}")
    return density_from_matrix(matrix_from_json(obj["matrix"], dim), tol=tol)


def basis_to_json(basis: MeasurementBasis) -> dict:
    return {"dim": basis.dim, "vectors": matrix_to_json(basis.vectors)}


def basis_from_json(obj) -> MeasurementBasis:
    if not isinstance(obj, dict) or "dim" not in obj or "vectors" not in obj:
        raise ParseError("measurement JSON needs keys 'dim' and 'vectors'")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}")
    return basis_from_vectors(matrix_from_json(obj["vectors"], dim))


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_state(path: str, tol: float = 1e-10) -> DensityMatrix:
    return state_from_json(load_json(path), tol=tol)


def load_basis(path: str) -> MeasurementBasis:
    return basis_from_json(load_json(path))


def dump_report(doc: dict) -> str:
    """Deterministic rendering: sorted keys, two-space indent."""
    return json.dumps(doc, sort_keys=True, indent=2)
