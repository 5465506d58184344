"""Monte-Carlo checks of the seminorm-level quantities.

Random A-unit vectors supported on ran(A) give one-sided bounds that are
exact up to sampling: every sampled value of |<Tx, x>_A| is a lower
bound for the numerical radius, every ||Tx||_A a lower bound for the
seminorm, and every |<Tx, x>_A| an upper bound for the Crawford number.
A short shrinking-radius polish around the best sampled direction
tightens the estimate; it only ever evaluates more vectors, so the
one-sided guarantee is untouched.  Used to cross-check the sweep and
reduction machinery through an entirely independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import SemiHilbertContext
from .ensembles import complex_normal, derive_rng
from .errors import DegenerateSample

_POLISH_ROUNDS = 6
_POLISH_BATCH = 300
_POLISH_RADIUS = 0.5
_POLISH_SHRINK = 0.4


@dataclass(frozen=True)
class OracleEstimate:
    """Sampled one-sided estimate of a scalar quantity.

    ``bound_side`` records which side is guaranteed: sampled lower bounds
    can only undershoot, sampled upper bounds only overshoot.
    """

    value: float
    samples: int
    bound_side: str
    seed: int


def _ratio_batch(ctx: SemiHilbertContext, M: np.ndarray, g: np.ndarray):
    """Rayleigh-type values and squared norm ratios for coefficient rows.

    Each row of ``g`` holds coordinates in the retained eigenbasis; rows
    of zero A-weight are dropped.  Returns (g, values, norm ratios) or
    None when nothing survives.
    """
    weight = (np.abs(g) ** 2) @ ctx.lam_plus
    keep = weight > 0.0
    if not np.any(keep):
        return None
    g = g[keep]
    weight = weight[keep]
    X = g @ ctx.U_plus.T
    Y = X @ M.T                       # rows are T x
    Z = Y @ ctx.A.T                   # rows are A T x
    vals = np.einsum("ij,ij->i", Z, X.conj()) / weight
    norms2 = np.einsum("ij,ij->i", Z, Y.conj()).real / weight
    return g, vals, norms2


def _search(ctx: SemiHilbertContext, T, n_samples: int, seed: int,
            score, minimize: bool = False) -> tuple[float, int]:
    """Best score over a seeded batch plus local polish rounds.

    Directions are drawn uniformly on the A-unit sphere of ran(A): a
    standard Gaussian in the A-orthonormal coordinates, mapped back to
    eigenbasis coefficients.  Without the rescaling, badly conditioned
    weights leave whole regions of the sphere essentially unsampled.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    M = np.asarray(T, dtype=np.complex128)
    rng = derive_rng(seed, "oracle")
    pick = np.argmin if minimize else np.argmax

    def batch(h):
        got = _ratio_batch(ctx, M, h * ctx.lam_half_inv[None, :])
        if got is None:
            return None
        g, vals, norms2 = got
        s = score(vals, norms2)
        i = int(pick(s))
        return float(s[i]), g[i] * ctx.lam_plus ** 0.5

    first = batch(complex_normal(rng, (n_samples, ctx.r)))
    if first is None:
        raise DegenerateSample("all sampled vectors had zero A-norm")
    best, h_best = first
    h_best = h_best / np.linalg.norm(h_best)
    total = n_samples
    radius = _POLISH_RADIUS
    for _ in range(_POLISH_ROUNDS):
        cand = h_best[None, :] + radius * complex_normal(
            rng, (_POLISH_BATCH, ctx.r))
        total += _POLISH_BATCH
        got = batch(cand)
        if got is not None:
            val, h_top = got
            if (val < best) if minimize else (val > best):
                best = val
                h_best = h_top / np.linalg.norm(h_top)
        radius *= _POLISH_SHRINK
    return best, total


def sample_w_lower(ctx: SemiHilbertContext, T, n_samples: int,
                   seed: int = 0) -> OracleEstimate:
    """Lower bound on the A-numerical radius from random A-unit vectors."""
    best, total = _search(ctx, T, n_samples, seed,
                          score=lambda v, n2: np.abs(v))
    return OracleEstimate(value=best, samples=total,
                          bound_side="lower", seed=int(seed))


def sample_norm_lower(ctx: SemiHilbertContext, T, n_samples: int,
                      seed: int = 0) -> OracleEstimate:
    """Lower bound on the operator A-seminorm."""
    best, total = _search(ctx, T, n_samples, seed,
                          score=lambda v, n2: n2)
    return OracleEstimate(value=float(np.sqrt(max(0.0, best))),
                          samples=total, bound_side="lower", seed=int(seed))


def sample_c_upper(ctx: SemiHilbertContext, T, n_samples: int,
                   seed: int = 0) -> OracleEstimate:
    """Upper bound on the A-Crawford number."""
    best, total = _search(ctx, T, n_samples, seed,
                          score=lambda v, n2: np.abs(v), minimize=True)
    return OracleEstimate(value=best, samples=total,
                          bound_side="upper", seed=int(seed))
