"""Dense complex linear algebra used by the recovery pipeline.

Thin contract-bearing wrappers over LAPACK via numpy: the guarantees are
accuracy bounds (orthonormality, reconstruction, residuals), not specific
algorithms.  Matrices are plain 2-D complex ndarrays; construction-time
validation rejects non-finite entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TorelliLabError


class EigenConvergenceError(TorelliLabError):
    """Eigeniteration did not converge; ``partial`` holds whatever exists."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and coerce to a finite dense complex 2-D array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return m


def svd(a):
    """Full SVD as (U, singular_values, V) with A = U @ diag(s) @ V*."""
    m = as_cmatrix(a)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    return u, s, vh.conj().T


def nullspace(a, rel_tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the right singular directions with
    singular value <= rel_tol * sigma_max; shape (cols, k), k possibly 0."""
    if not (0.0 < rel_tol < 1.0):
        raise ValueError("rel_tol must lie in (0, 1)")
    m = as_cmatrix(a)
    if m.size == 0:
        return np.eye(m.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(m.shape[1], dtype=complex)
    ns = [vh[i].conj() for i in range(m.shape[1])
          if i >= s.size or s[i] <= rel_tol * smax]
    if not ns:
        return np.empty((m.shape[1], 0), dtype=complex)
    return np.column_stack(ns)


@dataclass(frozen=True)
class EigResult:
    values: np.ndarray
    vectors: np.ndarray          # unit columns, vectors[:, k] pairs values[k]
    residuals: np.ndarray        # ||A v - lambda v|| per pair
    defective: bool


def eig_general(a) -> EigResult:
    """Eigenpairs of a general square complex matrix.

    Eigenvectors come back unit-norm with per-pair residuals; ``defective``
    flags an (numerically) incomplete eigenvector basis so callers can retry
    with fresh randomness rather than trust a bad frame.
    """
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError("eig_general needs a square matrix")
    try:
        values, vectors = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    norms = np.linalg.norm(vectors, axis=0)
    norms[norms == 0.0] = 1.0
    vectors = vectors / norms
    residuals = np.linalg.norm(m @ vectors - vectors * values, axis=0)
    if m.shape[0] == 0:
        return EigResult(values, vectors, residuals, False)
    sv = np.linalg.svd(vectors, compute_uv=False)
    defective = bool(sv[-1] <= 1e-12 * max(sv[0], 1.0))
    return EigResult(values, vectors, residuals, defective)


def lstsq(a, b) -> np.ndarray:
    """Minimum-norm least squares via SVD with cutoff 1e-12 * sigma_max."""
    m = as_cmatrix(a)
    rhs = np.asarray(b, dtype=complex)
    if rhs.ndim == 1:
        rhs = rhs[:, None]
        squeeze = True
    else:
        rhs = as_cmatrix(rhs, "right-hand side")
        squeeze = False
    if m.shape[0] != rhs.shape[0]:
        raise ValueError("row counts of the system and right-hand side differ")
    x, *_ = np.linalg.lstsq(m, rhs, rcond=1e-12)
    return x[:, 0] if squeeze else x
