"""Dense complex Hermitian linear-algebra helpers shared by the solver modules.

Everything here operates on plain ndarrays.  Hermitian inputs are symmetrized
before factorization so round-off asymmetry never leaks into downstream
checks.  Log-determinants go through Cholesky (sum of log of the factor
diagonal), never through a raw determinant.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import lapack

# Max-abs asymmetry accepted when validating Hermitian inputs.
HERMITIAN_TOL = 1e-10
# Eigenvalue slack used for PSD verdicts.
PSD_TOL = 1e-8

LOG2E = float(np.log2(np.e))


class FactorizationError(ValueError):
    """Cholesky failed: the input is not positive definite.

    ``minor_index`` is the 1-based order of the offending leading minor,
    as reported by LAPACK.
    """

    def __init__(self, minor_index: int):
        self.minor_index = int(minor_index)
        super().__init__(
            f"leading minor of order {self.minor_index} is not positive definite"
        )


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A^H)/2 of a square matrix."""
    a = np.asarray(a)
    return 0.5 * (a + a.conj().T)


def require_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Check Hermitian symmetry to ``tol`` in max-abs norm; return A symmetrized."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix has non-finite entries")
    gap = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if gap > tol:
        raise ValueError(
            f"matrix is not Hermitian: max asymmetry {gap:.3e} exceeds {tol:.1e}"
        )
    return hermitize(a)


def cholesky_lower(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of a Hermitian positive definite matrix.

    Raises FactorizationError with the offending leading-minor index when
    the matrix is not positive definite.
    """
    a = np.ascontiguousarray(hermitize(np.asarray(a, dtype=complex)))
    c, info = lapack.zpotrf(a, lower=1, clean=1, overwrite_a=0)
    if info > 0:
        raise FactorizationError(info)
    if info < 0:
        raise ValueError(f"invalid argument {-info} passed to zpotrf")
    return c


def logdet2(a: np.ndarray) -> float:
    """log2 det(A) for Hermitian positive definite A, via Cholesky."""
    c = cholesky_lower(a)
    return 2.0 * float(np.sum(np.log2(np.real(np.diag(c)))))


def logdet_nat(a: np.ndarray) -> float:
    """Natural-log determinant of a Hermitian positive definite matrix."""
    c = cholesky_lower(a)
    return 2.0 * float(np.sum(np.log(np.real(np.diag(c)))))


def lambda_max(a: np.ndarray) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    a = require_hermitian(a)
    return float(np.linalg.eigvalsh(a)[-1])


def hadamard(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise (Schur) product of two equally shaped matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def is_psd(a: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of Hermitian A is >= -tol."""
    a = require_hermitian(a)
    if a.size == 0:
        return True
    return bool(np.linalg.eigvalsh(a)[0] >= -tol)


def sqrt_psd(a: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-tol, 0) are treated as round-off and clipped to zero;
    anything below -tol is a domain error.
    """
    a = require_hermitian(a)
    w, v = np.linalg.eigh(a)
    if a.size and w[0] < -tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    return hermitize((v * np.sqrt(w)) @ v.conj().T)
