"""Semi-inner-product structure induced by a positive semidefinite weight.

A Hermitian PSD matrix A defines the semi-inner product

    <x, y>_A = <A x, y>    (linear in x, conjugate-linear in y)

and a seminorm on operators.  An operator T is compatible with this
structure when its conjugate transpose maps ran(A) into itself; those
operators admit a distinguished A-adjoint

    sharp(T) = pinv(A) T* A

and reduce, in the eigenbasis of A, to an ordinary r x r matrix

    tilde(T) = diag(sqrt(lam)) (U+* T U+) diag(1/sqrt(lam)),

where r = rank(A), lam the positive eigenvalues, U+ the matching
eigenvectors.  All seminorm-level quantities of T equal the standard
quantities of tilde(T); that reduction is how this module computes them.

A ``SemiHilbertContext`` freezes one weight with its spectral data so
repeated operator computations share the factorization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotInBA, ZeroOperator
from .linalg import (
    DEFAULT_TOL,
    EPS,
    Tolerances,
    as_matrix,
    frob,
    hermitian_eig,
    require_hermitian,
)
from .numrange import DEFAULT_SWEEP, SweepOptions, radius_and_support
from . import linalg


@dataclass(frozen=True)
class SemiHilbertContext:
    """Spectral data of one PSD weight matrix.

    ``eigenvalues`` and ``U`` hold the full decomposition in descending
    order; the first ``r`` columns span ran(A).  All arrays are read-only.
    """

    A: np.ndarray
    n: int
    r: int
    eigenvalues: np.ndarray
    U: np.ndarray
    lam_half: np.ndarray
    lam_half_inv: np.ndarray
    A_half: np.ndarray
    A_pinv: np.ndarray
    A_half_pinv: np.ndarray
    P: np.ndarray
    rank_cutoff: float
    tol: Tolerances = field(default_factory=Tolerances, compare=False)

    @property
    def U_plus(self) -> np.ndarray:
        return self.U[:, : self.r]

    @property
    def U_null(self) -> np.ndarray:
        return self.U[:, self.r:]

    @property
    def lam_plus(self) -> np.ndarray:
        return self.eigenvalues[: self.r]

    @property
    def invertible(self) -> bool:
        return self.r == self.n


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of the adjoint-compatibility test.

    ``residual`` is ||(I - P) T* A||_F, ``threshold`` the acceptance bound,
    ``borderline`` flags residuals within a decade of the threshold.
    """

    member: bool
    residual: float
    threshold: float
    borderline: bool

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class AQuantities:
    """Scalar seminorm-level data of one compatible operator.

    seminorm  operator A-seminorm
    w         A-numerical radius
    c         A-Crawford number
    m         A-minimum modulus (smallest singular value of the reduction)
    """

    seminorm: float
    w: float
    c: float
    m: float


def _frozen(M: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(M)
    out.setflags(write=False)
    return out


def make_context(A, tol: Tolerances = DEFAULT_TOL) -> SemiHilbertContext:
    """Validate a Hermitian PSD weight and freeze its spectral data."""
    evals, U = linalg._psd_eig(as_matrix(A, "weight"), tol.herm, "weight")
    n = evals.size
    lmax = float(evals[0])
    if lmax <= 0.0:
        raise ZeroOperator("weight matrix is numerically zero")
    cutoff = tol.rank if tol.rank is not None else n * EPS * lmax
    r = int(np.count_nonzero(evals > cutoff))
    if r == 0:
        raise ZeroOperator("weight matrix is numerically zero")

    lam = evals[:r]
    Up = U[:, :r]
    lam_half = np.sqrt(lam)
    A_half = (Up * lam_half) @ Up.conj().T
    A_pinv = (Up / lam) @ Up.conj().T
    A_half_pinv = (Up / lam_half) @ Up.conj().T
    P = Up @ Up.conj().T

    def herm(M):
        return _frozen(0.5 * (M + M.conj().T))

    Asym = require_hermitian(A, tol.herm, "weight")
    return SemiHilbertContext(
        A=_frozen(Asym),
        n=n,
        r=r,
        eigenvalues=_frozen(evals),
        U=_frozen(U),
        lam_half=_frozen(lam_half),
        lam_half_inv=_frozen(1.0 / lam_half),
        A_half=herm(A_half),
        A_pinv=herm(A_pinv),
        A_half_pinv=herm(A_half_pinv),
        P=herm(P),
        rank_cutoff=float(cutoff),
        tol=tol,
    )


def _check_vec(ctx: SemiHilbertContext, x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if v.size != ctx.n:
        raise DimensionMismatch(f"{name} has length {v.size}, expected {ctx.n}")
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def a_inner(ctx: SemiHilbertContext, x, y) -> complex:
    """<x, y>_A = <A x, y>, linear in x and conjugate-linear in y."""
    xv = _check_vec(ctx, x, "x")
    yv = _check_vec(ctx, y, "y")
    return complex(np.vdot(yv, ctx.A @ xv))


def a_norm_vec(ctx: SemiHilbertContext, x) -> float:
    """Seminorm sqrt(<x, x>_A) of a vector."""
    xv = _check_vec(ctx, x, "x")
    val = np.vdot(xv, ctx.A @ xv).real
    return float(np.sqrt(max(val, 0.0)))


def _square_op(ctx: SemiHilbertContext, T, name: str = "operator") -> np.ndarray:
    M = as_matrix(T, name)
    if M.shape[0] != ctx.n:
        raise DimensionMismatch(
            f"{name} has dimension {M.shape[0]}, context expects {ctx.n}"
        )
    return M


def membership(ctx: SemiHilbertContext, T) -> MembershipResult:
    """Test whether T* maps ran(A) into itself (compatibility with A)."""
    M = _square_op(ctx, T)
    TsA = M.conj().T @ ctx.A
    leak = frob(TsA - ctx.P @ TsA)
    threshold = ctx.tol.membership * max(1.0, frob(TsA))
    return MembershipResult(
        member=bool(leak <= threshold),
        residual=float(leak),
        threshold=float(threshold),
        borderline=bool(threshold < leak * 10.0),
    )


def in_ba(ctx: SemiHilbertContext, T) -> MembershipResult:
    """Alias of ``membership``; truthiness gives the yes/no answer."""
    return membership(ctx, T)


def _require_member(ctx: SemiHilbertContext, T, name: str = "operator") -> np.ndarray:
    M = _square_op(ctx, T, name)
    res = membership(ctx, M)
    if not res.member:
        raise NotInBA(
            f"{name} is not compatible with the weight "
            f"(residual {res.residual:.3e} > threshold {res.threshold:.3e})",
            residual=res.residual,
        )
    return M


def sharp(ctx: SemiHilbertContext, T) -> np.ndarray:
    """Distinguished A-adjoint pinv(A) T* A of a compatible operator."""
    M = _require_member(ctx, T)
    return ctx.A_pinv @ M.conj().T @ ctx.A


def tilde(ctx: SemiHilbertContext, T, check: bool = True) -> np.ndarray:
    """The r x r reduction of T carrying all its seminorm-level data.

    ``check=False`` skips the membership gate; use it only for operators
    already known compatible (products and sums of members are members).
    """
    M = _require_member(ctx, T) if check else _square_op(ctx, T)
    C = ctx.U_plus.conj().T @ M @ ctx.U_plus
    return (ctx.lam_half[:, None] * C) * ctx.lam_half_inv[None, :]


def seminorm(ctx: SemiHilbertContext, T, check: bool = True) -> float:
    """Operator A-seminorm, the spectral norm of the reduction."""
    return linalg.spectral_norm(tilde(ctx, T, check=check))


def a_quantities(ctx: SemiHilbertContext, T,
                 opts: SweepOptions = DEFAULT_SWEEP) -> AQuantities:
    """Seminorm, numerical radius, Crawford number and minimum modulus."""
    Tt = tilde(ctx, T)
    sv = np.linalg.svd(Tt, compute_uv=False)
    w, s = radius_and_support(Tt, opts)
    return AQuantities(
        seminorm=float(sv[0]),
        w=float(w),
        c=max(0.0, float(s)),
        m=float(sv[-1]),
    )


def cartesian_parts(ctx: SemiHilbertContext, T) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of T with respect to the A-adjoint.

    Returns ``(Re, Im)`` with Re = (T + sharp(T)) / 2 both A-selfadjoint
    and T = Re + i Im up to the seminorm.
    """
    M = _require_member(ctx, T)
    Ts = ctx.A_pinv @ M.conj().T @ ctx.A
    return 0.5 * (M + Ts), (M - Ts) / 2j


def is_a_selfadjoint(ctx: SemiHilbertContext, T, rtol: float = 1e-10) -> bool:
    """Whether A T = A sharp(T), i.e. the reduction is Hermitian."""
    Tt = tilde(ctx, T)
    scale = max(1.0, frob(Tt))
    return bool(frob(Tt - Tt.conj().T) <= rtol * scale)


def is_a_positive(ctx: SemiHilbertContext, T, rtol: float = 1e-10) -> bool:
    """Whether the reduction is Hermitian PSD (an A-positive operator)."""
    Tt = tilde(ctx, T)
    scale = max(1.0, frob(Tt))
    if frob(Tt - Tt.conj().T) > rtol * scale:
        return False
    evals, _ = hermitian_eig(0.5 * (Tt + Tt.conj().T), tol=1.0)
    return bool(evals[-1] >= -rtol * scale)
