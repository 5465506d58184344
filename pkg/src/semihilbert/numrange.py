"""Numerical radius, Crawford number and numerical-range boundary.

Everything here works on ordinary complex matrices with the standard
inner product.  The quantities derive from the rotated Hermitian family

    H(theta) = (e^{i theta} B + e^{-i theta} B*) / 2,

whose top eigenvalue, maximized over theta, is the numerical radius, and
whose bottom eigenvalue, maximized over theta, is the signed distance of
the numerical range from the origin (the Crawford number once clamped at
zero).  The maximization runs on a uniform angle grid with golden-section
refinement, provided by the active sweep backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .linalg import as_matrix


@dataclass(frozen=True)
class SweepOptions:
    """Angle-sweep controls.

    grid_points       uniform samples of theta in [0, 2*pi)
    refine_tol        bracket width (radians) at which refinement stops
    max_refine_iters  golden-section iterations per bracket
    """

    grid_points: int = 1024
    refine_tol: float = 1e-10
    max_refine_iters: int = 200

    def __post_init__(self):
        if self.grid_points < 16:
            raise ValueError("grid_points must be at least 16")
        if self.refine_tol <= 0:
            raise ValueError("refine_tol must be positive")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be at least 1")


DEFAULT_SWEEP = SweepOptions()


def rotated_real_part(B, theta: float) -> np.ndarray:
    """The Hermitian matrix (e^{i theta} B + e^{-i theta} B*) / 2."""
    A = as_matrix(B)
    rot = np.exp(1j * theta) * A
    return 0.5 * (rot + rot.conj().T)


def radius_and_support(B, opts: SweepOptions = DEFAULT_SWEEP) -> tuple[float, float]:
    """Numerical radius and signed Crawford support in one sweep.

    The support is negative when the origin lies inside the numerical
    range; ``crawford_number`` clamps it at zero.
    """
    A = as_matrix(B)
    if A.shape[0] == 1:
        v = abs(complex(A[0, 0]))
        return v, v
    return backend.sweep_extremes(A, opts.grid_points, opts.refine_tol,
                                  opts.max_refine_iters)


def numerical_radius(B, opts: SweepOptions = DEFAULT_SWEEP) -> float:
    """max |z| over the numerical range of B."""
    return radius_and_support(B, opts)[0]


def crawford_number(B, opts: SweepOptions = DEFAULT_SWEEP) -> float:
    """Distance from the origin to the numerical range (0 if inside)."""
    return max(0.0, radius_and_support(B, opts)[1])


def range_boundary(B, points: int) -> np.ndarray:
    """Supporting-point parametrization of the numerical-range boundary.

    For each of ``points`` angles theta, takes a top eigenvector x of
    H(theta) and records the range point x* B x.  Returns a complex array
    of length ``points``.  Convex hull of the result approximates the
    numerical range.
    """
    A = as_matrix(B)
    m = int(points)
    if m < 3:
        raise ValueError("points must be at least 3")
    out = np.empty(m, dtype=np.complex128)
    for k in range(m):
        H = rotated_real_part(A, 2.0 * np.pi * k / m)
        _, vecs = np.linalg.eigh(H)
        x = vecs[:, -1]
        out[k] = np.vdot(x, A @ x)
    return out
