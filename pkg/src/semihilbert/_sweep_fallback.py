"""Pure numpy implementation of the angle-sweep kernel.

Mirrors the compiled module: same functions, same algorithm (uniform grid
plus golden-section refinement of surviving local maxima), with batched
``eigvalsh`` doing the eigenvalue work.  Used when the compiled extension
is unavailable, and kept as the reference for backend-agreement tests.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch

name = "python"

_MAX_BRACKETS = 256
_INVPHI = 0.6180339887498949


def extremal_eigenvalues(H):
    """Smallest and largest eigenvalue of a Hermitian matrix."""
    A = np.asarray(H, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("matrix must be square")
    try:
        evals = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return float(evals[0]), float(evals[-1])


def _eval_side(B: np.ndarray, theta: float, side: int) -> float:
    ph = complex(np.cos(theta), np.sin(theta))
    H = 0.5 * (ph * B + np.conj(ph * B).T)
    try:
        evals = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return float(evals[-1]) if side else float(evals[0])


def _golden_max(B, side, a, b, hint, refine_tol, max_iters):
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = _eval_side(B, x1, side)
    f2 = _eval_side(B, x2, side)
    best = max(hint, f1, f2)
    for _ in range(max_iters):
        if b - a <= refine_tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = _eval_side(B, x1, side)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = _eval_side(B, x2, side)
        best = max(best, f1, f2)
    return best


def _refine_side(B, side, curve, prune_gap, refine_tol, max_iters):
    m = curve.size
    h = 2.0 * np.pi / m
    kmax = int(np.argmax(curve))
    gmax = float(curve[kmax])
    rising = curve > np.roll(curve, 1)
    holding = curve >= np.roll(curve, -1)
    near = curve >= gmax - prune_gap
    brackets = np.flatnonzero(rising & holding & near)[:_MAX_BRACKETS]
    if brackets.size == 0:
        brackets = np.array([kmax])
    best = gmax
    for k in brackets:
        best = max(best, _golden_max(B, side, k * h - h, k * h + h,
                                     float(curve[k]), refine_tol, max_iters))
    return best


def sweep_extremes(B, grid_points: int, refine_tol: float, max_refine_iters: int):
    """Maximum of the top curve and maximum of the bottom curve of H(theta).

    Returns ``(w, s)``: the numerical radius and the signed Crawford
    support of B.
    """
    A = np.ascontiguousarray(B, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch("matrix must be square and nonempty")
    m = int(grid_points)
    if m < 16:
        raise ValueError("grid_points must be at least 16")

    thetas = (2.0 * np.pi / m) * np.arange(m)
    rot = np.exp(1j * thetas)[:, None, None] * (0.5 * A)
    stack = rot + np.conj(np.swapaxes(rot, 1, 2))
    try:
        evals = np.linalg.eigvalsh(stack)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    top = evals[:, -1]
    bot = evals[:, 0]

    prune_gap = 2.0 * float(np.linalg.norm(A)) * (2.0 * np.pi / m)
    w = _refine_side(A, 1, top, prune_gap, refine_tol, max_refine_iters)
    s = _refine_side(A, 0, bot, prune_gap, refine_tol, max_refine_iters)
    return w, s
