"""Seeded random instances: weights, compatible operators, tightness search.

Generation is counter-based: every trial derives its own Philox stream
from (master_seed, trial_index, block_tag), so trials are reproducible
bitwise and independent of execution order.  Operators compatible with a
weight are built blockwise in the weight's eigenbasis, where membership
means a vanishing upper-right block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .context import SemiHilbertContext, make_context
from .errors import DegenerateSample, UnknownKind
from .linalg import MAX_DIM

SPECTRUM_LAWS = ("uniform", "loguniform", "equal")
FAMILIES = ("general_in_BA", "a_selfadjoint", "shift_like", "unitary_scaled")

_MASK64 = (1 << 64) - 1


def _entropy_word(part) -> int:
    if isinstance(part, str):
        return int.from_bytes(part.encode("utf-8"), "little")
    return int(part) & _MASK64


def derive_rng(*path) -> np.random.Generator:
    """Philox generator keyed by a mixed int/string path."""
    words = [_entropy_word(p) for p in path]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Entries with independent standard normal real and imaginary parts."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@dataclass(frozen=True)
class EnsembleSpec:
    """One cell of random trials: weight shape, spectrum law, operator family."""

    n: int
    rank: int
    spectrum_law: str = "uniform"
    family: str = "general_in_BA"
    count: int = 100
    master_seed: int = 0

    def __post_init__(self):
        if not (1 <= self.n <= MAX_DIM):
            raise ValueError(f"n must be in [1, {MAX_DIM}]")
        if not (1 <= self.rank <= self.n):
            raise ValueError("rank must be in [1, n]")
        if self.spectrum_law not in SPECTRUM_LAWS:
            raise ValueError(f"unknown spectrum law {self.spectrum_law!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.count < 0:
            raise ValueError("count must be nonnegative")


@dataclass
class Witness:
    """A concrete instance worth keeping: weight, operators, and its chain."""

    theorem_id: str
    A: np.ndarray
    operators: dict[str, np.ndarray]
    chain: list[tuple[str, float]]
    min_slack: float
    seed_path: tuple = ()
    meta: dict = field(default_factory=dict)


def _spectrum(law: str, rank: int, rng: np.random.Generator) -> np.ndarray:
    if law == "uniform":
        # uniform on (0, 1]
        return 1.0 - rng.random(rank)
    if law == "loguniform":
        return 10.0 ** rng.uniform(-3.0, 3.0, rank)
    if law == "equal":
        return np.ones(rank)
    raise UnknownKind(f"unknown spectrum law {law!r}")


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR."""
    Q, R = np.linalg.qr(complex_normal(rng, (n, n)))
    d = np.diagonal(R)
    ph = d / np.abs(d)
    return Q * ph


def gen_psd(n: int, rank: int, law: str, rng: np.random.Generator) -> np.ndarray:
    """Random PSD weight with exact rank and the given spectrum law."""
    if not (1 <= rank <= n <= MAX_DIM):
        raise ValueError("need 1 <= rank <= n <= cap")
    lam = _spectrum(law, rank, rng)
    U = haar_unitary(n, rng)
    Up = U[:, :rank]
    A = (Up * lam) @ Up.conj().T
    return 0.5 * (A + A.conj().T)


def _assemble_blocks(ctx: SemiHilbertContext, B11, B21, B22) -> np.ndarray:
    """Operator with the given blocks in the weight eigenbasis.

    The upper-right block is zero, which is exactly the membership
    condition, so the result is compatible by construction.
    """
    n, r = ctx.n, ctx.r
    B = np.zeros((n, n), dtype=np.complex128)
    B[:r, :r] = B11
    if n > r:
        B[r:, :r] = B21
        B[r:, r:] = B22
    return ctx.U @ B @ ctx.U.conj().T


def gen_operator_in_ba(ctx: SemiHilbertContext, rng: np.random.Generator) -> np.ndarray:
    """Generic compatible operator with independent Gaussian blocks."""
    n, r = ctx.n, ctx.r
    return _assemble_blocks(
        ctx,
        complex_normal(rng, (r, r)),
        complex_normal(rng, (n - r, r)) if n > r else None,
        complex_normal(rng, (n - r, n - r)) if n > r else None,
    )


def gen_a_selfadjoint(ctx: SemiHilbertContext, rng: np.random.Generator) -> np.ndarray:
    """Operator equal to its own A-adjoint, plus a free null-space part.

    Built as pinv(A) H with H a Hermitian matrix supported on ran(A),
    scaled by the smallest retained eigenvalue so the reduction stays
    well conditioned, plus columns inside null(A) that the seminorm
    cannot see.
    """
    n, r = ctx.n, ctx.r
    G = complex_normal(rng, (r, r))
    Hred = 0.5 * (G + G.conj().T) * float(ctx.lam_plus[-1])
    Up = ctx.U_plus
    T = (Up / ctx.lam_plus) @ Hred @ Up.conj().T
    if n > r:
        T = T + ctx.U_null @ complex_normal(rng, (n - r, n))
    return T


def _shift_matrix(r: int) -> np.ndarray:
    S = np.zeros((r, r), dtype=np.complex128)
    for i in range(r - 1):
        S[i, i + 1] = 1.0
    return S


def gen_special(ctx: SemiHilbertContext, kind: str,
                rng: np.random.Generator) -> np.ndarray:
    """Structured operator whose reduction is a scaled shift or unitary.

    ``kind`` is one of ``shift_like``, ``unitary_scaled``, ``scalar``.
    The reduction is prescribed first and pulled back through the basis,
    with Gaussian null-space blocks at a matching scale.
    """
    n, r = ctx.n, ctx.r
    c = complex(complex_normal(rng, ()))
    if kind == "shift_like":
        Mred = c * _shift_matrix(r)
    elif kind == "unitary_scaled":
        Mred = c * haar_unitary(r, rng)
    elif kind == "scalar":
        return c * np.eye(n, dtype=np.complex128)
    else:
        raise UnknownKind(f"unknown special operator kind {kind!r}")
    B11 = (Mred * ctx.lam_half[None, :]) * ctx.lam_half_inv[:, None]
    scale = max(float(np.linalg.norm(B11)) / r, abs(c) / r, 1e-6)
    B21 = scale * complex_normal(rng, (n - r, r)) if n > r else None
    B22 = scale * complex_normal(rng, (n - r, n - r)) if n > r else None
    return _assemble_blocks(ctx, B11, B21, B22)


def gen_for_family(ctx: SemiHilbertContext, family: str,
                   rng: np.random.Generator) -> np.ndarray:
    """Family dispatch used by the verification suite."""
    if family == "general_in_BA":
        return gen_operator_in_ba(ctx, rng)
    if family == "a_selfadjoint":
        return gen_a_selfadjoint(ctx, rng)
    if family in ("shift_like", "unitary_scaled"):
        return gen_special(ctx, family, rng)
    raise UnknownKind(f"unknown family {family!r}")


def generate_trial(spec: EnsembleSpec, index: int,
                   ctx: SemiHilbertContext | None = None,
                   op_names: tuple[str, ...] = ("T", "S", "X")):
    """Weight context and operator set for one trial of the ensemble."""
    if ctx is None:
        rng_a = derive_rng(spec.master_seed, index, "A")
        A = gen_psd(spec.n, spec.rank, spec.spectrum_law, rng_a)
        ctx = make_context(A)
    ops = {}
    for tag in op_names:
        rng = derive_rng(spec.master_seed, index, tag)
        ops[tag] = gen_for_family(ctx, spec.family, rng)
    return ctx, ops


def _free_blocks(ctx: SemiHilbertContext, T: np.ndarray):
    n, r = ctx.n, ctx.r
    B = ctx.U.conj().T @ T @ ctx.U
    return B, n, r


def tightness_search(ctx: SemiHilbertContext, theorem_id: str,
                     start_ops: dict[str, np.ndarray], iters: int = 800,
                     step: float = 0.25,
                     rng: np.random.Generator | None = None,
                     opts=None, tol=None, seed_path: tuple = ()) -> Witness:
    """Hill-climb the operators toward equality in one inequality.

    Gaussian perturbations of the free blocks (membership structure is
    preserved exactly), accepting only improvements of the smallest
    slack.  The step follows a success rule: it grows a little on
    acceptance and decays on rejection, so the walk anneals itself onto
    the equality set.  The returned witness carries the best operators
    and their chain.
    """
    from .inequalities import reports_for  # local import to avoid a cycle

    if rng is None:
        rng = derive_rng(0, "tightness")
    n, r = ctx.n, ctx.r

    def evaluate(ops):
        reps = reports_for(ctx, theorem_id, ops, opts=opts, tol=tol)
        slack = min(min(rep.slacks) for rep in reps)
        chain = list(reps[0].chain) if len(reps) == 1 else [
            (f"{rep.theorem_id}:{lab}", val)
            for rep in reps for lab, val in rep.chain
        ]
        return slack, chain

    current = {k: np.array(v, dtype=np.complex128) for k, v in start_ops.items()}
    best_slack, best_chain = evaluate(current)
    best_ops = {k: v.copy() for k, v in current.items()}
    step0 = float(step)
    cur_step = step0
    for _ in range(int(iters)):
        trial_ops = {}
        for name_, M in best_ops.items():
            B, _, _ = _free_blocks(ctx, M)
            B = B.copy()
            scale = cur_step * max(1.0, float(np.abs(B).max()))
            B[:r, :r] += scale * complex_normal(rng, (r, r))
            if n > r:
                B[r:, :r] += scale * complex_normal(rng, (n - r, r))
                B[r:, r:] += scale * complex_normal(rng, (n - r, n - r))
                B[:r, r:] = 0.0
            trial_ops[name_] = ctx.U @ B @ ctx.U.conj().T
        try:
            slack, chain = evaluate(trial_ops)
        except DegenerateSample:
            continue
        if slack < best_slack:
            best_slack, best_chain = slack, chain
            best_ops = trial_ops
            cur_step = min(cur_step * 1.3, step0)
        else:
            cur_step = max(cur_step * 0.96, 1e-10)
    return Witness(
        theorem_id=theorem_id,
        A=np.array(ctx.A),
        operators=best_ops,
        chain=best_chain,
        min_slack=float(best_slack),
        seed_path=tuple(seed_path),
        meta={"iters": int(iters), "final_step": cur_step},
    )
