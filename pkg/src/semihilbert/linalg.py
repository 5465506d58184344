"""Dense Hermitian linear algebra primitives shared by the rest of the package.

All matrices are numpy ``complex128`` arrays, treated as immutable values.
Matrices are validated at entry points.  Anything above dimension
``MAX_DIM`` is refused: the package targets small dense problems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD

MAX_DIM = 64

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across validation and verdicts.

    herm        relative Hermitian-symmetry tolerance
    recon       relative reconstruction tolerance for factorizations
    membership  relative residual for adjoint-compatibility membership
    verdict     relative slack tolerance for inequality verdicts
    condition   relative residual for algebraic preconditions
    rank        absolute rank cutoff; None means n * eps * lambda_max
    """

    herm: float = 1e-10
    recon: float = 1e-10
    membership: float = 1e-10
    verdict: float = 1e-8
    condition: float = 1e-12
    rank: float | None = None


DEFAULT_TOL = Tolerances()


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex128 array with finite entries."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] == 0:
        raise DimensionMismatch(f"{name} must be nonempty")
    if A.shape[0] > MAX_DIM:
        raise DimensionMismatch(
            f"{name} has dimension {A.shape[0]}, above the supported cap {MAX_DIM}"
        )
    if not np.all(np.isfinite(A.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def frob(M: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(M))


def require_hermitian(M, tol: float = DEFAULT_TOL.herm, name: str = "matrix") -> np.ndarray:
    """Validate Hermitian symmetry within ``tol`` (relative) and symmetrize.

    Returns (M + M*) / 2 so downstream code sees an exactly Hermitian array.
    """
    A = as_matrix(M, name)
    scale = max(1.0, frob(A))
    if frob(A - A.conj().T) > tol * scale:
        raise NotHermitian(f"{name} is not Hermitian within {tol:g} (relative)")
    return 0.5 * (A + A.conj().T)


def hermitian_eig(M, tol: float = DEFAULT_TOL.herm) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvectors.

    Returns ``(evals, V)`` with ``M = V @ diag(evals) @ V*`` up to roundoff
    and ``evals[0] >= evals[1] >= ...``.
    """
    H = require_hermitian(M, tol)
    evals, vecs = np.linalg.eigh(H)
    return evals[::-1].copy(), vecs[:, ::-1].copy()


def spectral_norm(M) -> float:
    """Largest singular value.  Zero for the zero matrix."""
    A = as_matrix(M)
    if not A.any():
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def numerical_rank(M, tol: float | None = None) -> int:
    """Number of eigenvalues of a Hermitian PSD matrix above the cutoff.

    The default cutoff is ``n * eps * lambda_max``; a nonpositive largest
    eigenvalue gives rank 0.
    """
    evals, _ = hermitian_eig(M)
    return _rank_from_evals(evals, M_dim=evals.size, tol=tol)


def _rank_from_evals(evals: np.ndarray, M_dim: int, tol: float | None) -> int:
    lmax = float(evals[0]) if evals.size else 0.0
    if lmax <= 0.0:
        return 0
    cutoff = tol if tol is not None else M_dim * EPS * lmax
    return int(np.count_nonzero(evals > cutoff))


def _psd_eig(M, herm_tol: float, name: str) -> tuple[np.ndarray, np.ndarray]:
    """eigh with a PSD gate: eigenvalues below -herm_tol * lambda_max fail."""
    evals, vecs = hermitian_eig(M, herm_tol)
    lmax = float(evals[0])
    if evals[-1] < -herm_tol * max(lmax, 1.0):
        raise NotPSD(f"{name} has eigenvalue {evals[-1]:.3e}, below the PSD gate")
    return evals, vecs


def pinv_psd(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a Hermitian PSD matrix.

    Eigenvalues at or below the rank cutoff are treated as exact zeros, so
    the result is Hermitian PSD with the same range as the input.
    """
    evals, vecs = _psd_eig(M, tol.herm, "pinv_psd input")
    r = _rank_from_evals(evals, evals.size, tol.rank)
    if r == 0:
        return np.zeros_like(np.asarray(M, dtype=np.complex128))
    Vp = vecs[:, :r]
    out = (Vp / evals[:r]) @ Vp.conj().T
    return 0.5 * (out + out.conj().T)


def sqrt_psd(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix (rank-truncated)."""
    evals, vecs = _psd_eig(M, tol.herm, "sqrt_psd input")
    r = _rank_from_evals(evals, evals.size, tol.rank)
    if r == 0:
        return np.zeros_like(np.asarray(M, dtype=np.complex128))
    Vp = vecs[:, :r]
    out = (Vp * np.sqrt(evals[:r])) @ Vp.conj().T
    return 0.5 * (out + out.conj().T)
