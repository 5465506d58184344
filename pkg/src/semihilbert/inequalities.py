"""Catalog of seminorm and numerical-radius inequality checks.

Every check evaluates an ordered chain of scalar expressions that the
underlying inequality asserts is nondecreasing, reports per-link slack,
and passes when no slack is below -tol relative to the link's right
side.  All seminorm-level quantities are evaluated through the tilde
reduction, with sweeps memoized per instance so bundled checks share
work.

Check identifiers are stable strings (``base_11``, ``thm25``, ...);
grouped catalog entries (``thm23``, ``thm28``) expand into suffixed
report ids (``thm23_i`` ... ``thm23_v``).
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import ensembles
from .context import SemiHilbertContext, membership, tilde
from .errors import ConditionNotMet, NotInBA, SemiHilbertError
from .linalg import DEFAULT_TOL, Tolerances, frob, spectral_norm
from .numrange import DEFAULT_SWEEP, SweepOptions, radius_and_support

_SQRT2 = float(np.sqrt(2.0))
_SQRT3 = float(np.sqrt(3.0))


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated chain with its verdict.

    ``slacks[i] = chain[i+1] - chain[i]``; the check passes when every
    slack is at least ``-tol_used * max(1, |chain[i+1]|)``.
    """

    theorem_id: str
    chain: tuple[tuple[str, float], ...]
    slacks: tuple[float, ...]
    satisfied: bool
    tol_used: float
    witness_digest: str
    warnings: tuple[str, ...] = ()

    @property
    def min_slack(self) -> float:
        return min(self.slacks)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "chain": [[lab, val] for lab, val in self.chain],
            "slacks": list(self.slacks),
            "satisfied": self.satisfied,
            "tol_used": self.tol_used,
            "witness_digest": self.witness_digest,
            "warnings": list(self.warnings),
        }


def _digest(ctx: SemiHilbertContext, ops: dict) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(ctx.A).tobytes())
    for name in sorted(ops):
        h.update(name.encode())
        h.update(np.ascontiguousarray(ops[name], dtype=np.complex128).tobytes())
    return h.hexdigest()[:16]


class _Evaluator:
    """Per-instance scratchpad: reduced operators and memoized sweeps."""

    def __init__(self, ctx: SemiHilbertContext, ops: dict,
                 opts: SweepOptions, tol: float):
        self.ctx = ctx
        self.opts = opts
        self.tol = float(tol)
        self.warnings: list[str] = []
        self.mats: dict[str, np.ndarray] = {}
        self.red: dict[str, np.ndarray] = {}
        for name in sorted(ops):
            M = np.asarray(ops[name], dtype=np.complex128)
            res = membership(ctx, M)
            if not res.member:
                raise NotInBA(
                    f"operator {name} is not compatible with the weight "
                    f"(residual {res.residual:.3e})",
                    residual=res.residual,
                )
            if res.borderline:
                self.warnings.append(
                    f"membership residual of {name} within a decade of the "
                    f"threshold ({res.residual:.3e} vs {res.threshold:.3e})"
                )
            self.mats[name] = M
            self.red[name] = tilde(ctx, M, check=False)
        self.digest = _digest(ctx, ops)
        self.eye = np.eye(ctx.r, dtype=np.complex128)
        self._sweeps: dict[str, tuple[float, float]] = {}

    def _sweep(self, key: str, M: np.ndarray) -> tuple[float, float]:
        got = self._sweeps.get(key)
        if got is None:
            got = radius_and_support(M, self.opts)
            self._sweeps[key] = got
        return got

    def radius(self, key: str, M: np.ndarray) -> float:
        return self._sweep(key, M)[0]

    def crawford(self, key: str, M: np.ndarray) -> float:
        return max(0.0, self._sweep(key, M)[1])

    def report(self, theorem_id: str, chain) -> InequalityReport:
        values = [float(v) for _, v in chain]
        slacks = tuple(values[i + 1] - values[i] for i in range(len(values) - 1))
        ok = all(
            slacks[i] >= -self.tol * max(1.0, abs(values[i + 1]))
            for i in range(len(slacks))
        )
        return InequalityReport(
            theorem_id=theorem_id,
            chain=tuple((lab, float(v)) for lab, v in chain),
            slacks=slacks,
            satisfied=ok,
            tol_used=self.tol,
            witness_digest=self.digest,
            warnings=tuple(self.warnings),
        )


def _chains_base_11(ev: _Evaluator):
    T = ev.red["T"]
    nt = spectral_norm(T)
    w = ev.radius("w:T", T)
    return [ev.report("base_11", [
        ("0.5*||T||_A", 0.5 * nt),
        ("w_A(T)", w),
        ("||T||_A", nt),
    ])]


def _k_of(T: np.ndarray) -> np.ndarray:
    Th = T.conj().T
    return Th @ T + T @ Th


def _chains_base_12(ev: _Evaluator):
    T = ev.red["T"]
    nk = spectral_norm(_k_of(T))
    w = ev.radius("w:T", T)
    return [ev.report("base_12", [
        ("0.25*||K||_A", 0.25 * nk),
        ("w_A(T)^2", w * w),
        ("0.5*||K||_A", 0.5 * nk),
    ])]


def _chains_thm21(ev: _Evaluator):
    S, T, X = ev.red["S"], ev.red["T"], ev.red["X"]
    Sh = S.conj().T
    Th = T.conj().T
    out = [ev.report("thm21", [
        ("2*||sharp(S) X T||_A", 2.0 * spectral_norm(Sh @ X @ T)),
        ("||S sharp(S) X + X T sharp(T)||_A", spectral_norm(S @ Sh @ X + X @ T @ Th)),
    ])]
    out.append(ev.report("cor22", [
        ("2*||sharp(S) T||_A", 2.0 * spectral_norm(Sh @ T)),
        ("||S sharp(S) + T sharp(T)||_A", spectral_norm(S @ Sh + T @ Th)),
    ]))
    return out


def _chains_thm23(ev: _Evaluator):
    S, T = ev.red["S"], ev.red["T"]
    Sh = S.conj().T
    Th = T.conj().T
    ns = spectral_norm(S)
    nt = spectral_norm(T)
    nsum = spectral_norm(S + T)
    w_st = ev.radius("w:S#T", Sh @ T)
    w_ts = ev.radius("w:ST#", S @ Th)
    n_left = spectral_norm(Sh @ S + Th @ T)
    n_right = spectral_norm(S @ Sh + T @ Th)
    out = []
    out.append(ev.report("thm23_i", [
        ("||S+T||_A", nsum),
        ("sqrt(||S||^2+||T||^2+||sharp(S)T+sharp(T)S||)",
         float(np.sqrt(ns * ns + nt * nt + spectral_norm(Sh @ T + Th @ S)))),
        ("||S||_A+||T||_A", ns + nt),
    ]))
    out.append(ev.report("thm23_ii", [
        ("||S+T||_A", nsum),
        ("sqrt(||S||^2+||T||^2+||S||*||T||+min(w))",
         float(np.sqrt(ns * ns + nt * nt + ns * nt + min(w_st, w_ts)))),
        ("||S||_A+||T||_A", ns + nt),
    ]))
    out.append(ev.report("thm23_iii", [
        ("||S+T||_A^2", nsum * nsum),
        ("||S||^2+||T||^2+0.5*||sharp(S)S+sharp(T)T||+w(sharp(S)T)",
         ns * ns + nt * nt + 0.5 * n_left + w_st),
    ]))
    out.append(ev.report("thm23_iv", [
        ("||S+T||_A^2", nsum * nsum),
        ("||S||^2+||T||^2+0.5*||S sharp(S)+T sharp(T)||+w(S sharp(T))",
         ns * ns + nt * nt + 0.5 * n_right + w_ts),
    ]))
    Q = 0.5 * (Sh @ S + Th @ T)
    d = spectral_norm(S @ Th)
    out.append(ev.report("thm23_v", [
        ("||S sharp(T)||_A", d),
        ("(1/sqrt(3))*||Q^2+d^2*I+d*Q||^0.5",
         float(np.sqrt(spectral_norm(Q @ Q + (d * d) * ev.eye + d * Q))) / _SQRT3),
        ("0.5*||sharp(S)S+sharp(T)T||_A", 0.5 * n_left),
    ]))
    return out


def _chains_thm25(ev: _Evaluator):
    T = ev.red["T"]
    Th = T.conj().T
    P = T + Th
    M = T - Th
    p = spectral_norm(P)
    m = spectral_norm(M)
    nk = spectral_norm(_k_of(T))
    cp = ev.crawford("c:T+T#", P)
    cm = ev.crawford("c:T-T#", M)
    w = ev.radius("w:T", T)
    w2 = w * w
    s8 = 0.125 * (p * p + m * m)
    lower = s8 + 0.125 * (cp * cp + cm * cm)
    out = [ev.report("thm25", [
        ("0.25*||K||_A", 0.25 * nk),
        ("(p^2+m^2)/8", s8),
        ("(p^2+m^2)/8+(c_P^2+c_M^2)/8", lower),
        ("w_A(T)^2", w2),
    ])]
    out.append(ev.report("remark26_weak", [
        ("0.25*||K||_A+(c_P^2+c_M^2)/8", 0.25 * nk + 0.125 * (cp * cp + cm * cm)),
        ("w_A(T)^2", w2),
    ]))
    sv = np.linalg.svd(T, compute_uv=False)
    m_t = float(sv[-1])
    m_th = float(np.linalg.svd(Th, compute_uv=False)[-1])
    nt = float(sv[0])
    out.append(ev.report("remark26_m", [
        ("0.25*||T||_A^2", 0.25 * nt * nt),
        ("0.25*||T||^2+0.25*max(m(T)^2,m(sharp(T))^2)",
         0.25 * nt * nt + 0.25 * max(m_t * m_t, m_th * m_th)),
        ("0.25*||K||_A", 0.25 * nk),
        ("w_A(T)^2", w2),
    ]))
    return out


def _chains_thm27(ev: _Evaluator):
    S, T = ev.red["S"], ev.red["T"]
    Sh = S.conj().T
    Th = T.conj().T
    return [ev.report("thm27", [
        ("w_A(sharp(T)S)", ev.radius("w:T#S", Th @ S)),
        ("0.5*||sharp(S)S+sharp(T)T||_A", 0.5 * spectral_norm(Sh @ S + Th @ T)),
    ])]


def _chains_thm28(ev: _Evaluator):
    T = ev.red["T"]
    Th = T.conj().T
    P = T + Th
    M = T - Th
    p = spectral_norm(P)
    m = spectral_norm(M)
    K = _k_of(T)
    nk = spectral_norm(K)
    w = ev.radius("w:T", T)
    w2 = w * w
    out = []
    out.append(ev.report("thm28_i", [
        ("(max(p^2,m^2)+p*m)/8", 0.125 * (max(p * p, m * m) + p * m)),
        ("w_A(T)^2", w2),
    ]))
    out.append(ev.report("thm28_ii", [
        ("0.25*||K||_A", 0.25 * nk),
        ("(p^4+m^4)^0.5/(4*sqrt(2))",
         float(np.sqrt(p ** 4 + m ** 4)) / (4.0 * _SQRT2)),
        ("w_A(T)^2", w2),
    ]))
    out.append(ev.report("thm28_iii", [
        ("((p^2+m^2)^2+0.5*(p^2-m^2)^2)^0.5/8",
         0.125 * float(np.sqrt((p * p + m * m) ** 2 + 0.5 * (p * p - m * m) ** 2))),
        ("w_A(T)^2", w2),
    ]))
    pm = spectral_norm(P @ P @ M @ M)
    out.append(ev.report("thm28_iv", [
        ("0.5*||K||-0.25*||P^2 M^2||^0.5", 0.5 * nk - 0.25 * float(np.sqrt(pm))),
        ("w_A(T)^2", w2),
        ("0.5*||K||_A", 0.5 * nk),
    ]))
    Q = 0.5 * K
    out.append(ev.report("thm28_v", [
        ("w_A(T)^2", w2),
        ("(1/sqrt(3))*||Q^2+w^4*I+w^2*Q||^0.5",
         float(np.sqrt(spectral_norm(Q @ Q + (w2 * w2) * ev.eye + w2 * Q))) / _SQRT3),
        ("0.5*||K||_A", 0.5 * nk),
    ]))
    return out


def _chains_eq_cond(ev: _Evaluator):
    ctx = ev.ctx
    Tm = ev.mats["T"]
    Ts = ctx.A_pinv @ Tm.conj().T @ ctx.A
    Pm = Tm + Ts
    Mm = Tm - Ts
    residual = frob(ctx.A @ (Pm @ Pm) @ (Mm @ Mm))
    if residual > ctx.tol.condition:
        raise ConditionNotMet(
            f"commutation product residual {residual:.3e} above "
            f"{ctx.tol.condition:g}", residual=residual,
        )
    T = ev.red["T"]
    nk = spectral_norm(_k_of(T))
    w = ev.radius("w:T", T)
    w2 = w * w
    # equality encoded as a palindromic chain: both slacks near zero
    return [ev.report("eq_cond_28", [
        ("w_A(T)^2", w2),
        ("0.5*||K||_A", 0.5 * nk),
        ("w_A(T)^2", w2),
    ])]


def _chains_thm29(ev: _Evaluator):
    T = ev.red["T"]
    nt = spectral_norm(T)
    n2 = spectral_norm(T @ T)
    nk = spectral_norm(_k_of(T))
    w = ev.radius("w:T", T)
    right = 0.5 * nt + 0.5 * float(np.sqrt(n2))
    mid = float(np.sqrt((np.sqrt(n2) * right + 0.5 * nk) / 2.0))
    return [ev.report("thm29", [
        ("w_A(T)", w),
        ("sqrt((||T^2||^0.5*(0.5*||T||+0.5*||T^2||^0.5)+0.5*||K||)/2)", mid),
        ("0.5*||T||_A+0.5*||T^2||_A^0.5", right),
    ])]


def _chains_thm210(ev: _Evaluator):
    T = ev.red["T"]
    T2 = T @ T
    nk = spectral_norm(_k_of(T))
    w = ev.radius("w:T", T)
    w_t2 = ev.radius("w:T^2", T2)
    Re2 = 0.5 * (T2 + T2.conj().T)
    c2 = ev.crawford("c:(Re T^2)^2", Re2 @ Re2)
    return [ev.report("thm210", [
        ("||K||^2/16+0.25*c_A((Re_A(T^2))^2)", nk * nk / 16.0 + 0.25 * c2),
        ("w_A(T)^4", w ** 4),
        ("||K||^2/8+0.5*w_A(T^2)^2", nk * nk / 8.0 + 0.5 * w_t2 * w_t2),
    ])]


# bundle id -> (operator names required, chain builder)
BUNDLES = {
    "base_11": (("T",), _chains_base_11),
    "base_12": (("T",), _chains_base_12),
    "thm21": (("S", "T", "X"), _chains_thm21),
    "thm23": (("S", "T"), _chains_thm23),
    "thm25": (("T",), _chains_thm25),
    "thm27": (("S", "T"), _chains_thm27),
    "thm28": (("T",), _chains_thm28),
    "eq_cond_28": (("T",), _chains_eq_cond),
    "thm29": (("T",), _chains_thm29),
    "thm210": (("T",), _chains_thm210),
}

# report id -> bundle that produces it
REPORT_BUNDLE = {
    "base_11": "base_11",
    "base_12": "base_12",
    "thm21": "thm21",
    "cor22": "thm21",
    "thm23_i": "thm23",
    "thm23_ii": "thm23",
    "thm23_iii": "thm23",
    "thm23_iv": "thm23",
    "thm23_v": "thm23",
    "thm25": "thm25",
    "remark26_weak": "thm25",
    "remark26_m": "thm25",
    "thm27": "thm27",
    "thm28_i": "thm28",
    "thm28_ii": "thm28",
    "thm28_iii": "thm28",
    "thm28_iv": "thm28",
    "thm28_v": "thm28",
    "eq_cond_28": "eq_cond_28",
    "thm29": "thm29",
    "thm210": "thm210",
}

ALL_BUNDLES = tuple(BUNDLES)
ALL_REPORT_IDS = tuple(REPORT_BUNDLE)


def run_bundle(ctx: SemiHilbertContext, bundle_id: str, ops: dict,
               opts: SweepOptions = DEFAULT_SWEEP,
               tol: float | None = None,
               _ev: _Evaluator | None = None) -> list[InequalityReport]:
    """Evaluate one catalog bundle on explicit operators."""
    if bundle_id not in BUNDLES:
        raise ValueError(f"unknown check id {bundle_id!r}")
    needed, builder = BUNDLES[bundle_id]
    missing = [name for name in needed if name not in ops]
    if missing:
        raise ValueError(f"check {bundle_id!r} needs operators {missing}")
    if _ev is None:
        tol_val = DEFAULT_TOL.verdict if tol is None else float(tol)
        _ev = _Evaluator(ctx, {k: ops[k] for k in needed}, opts, tol_val)
    return builder(_ev)


def reports_for(ctx: SemiHilbertContext, theorem_id: str, ops: dict,
                opts: SweepOptions | None = None,
                tol: float | None = None) -> list[InequalityReport]:
    """Reports for a bundle id or a single report id."""
    opts = DEFAULT_SWEEP if opts is None else opts
    if theorem_id in BUNDLES:
        return run_bundle(ctx, theorem_id, ops, opts, tol)
    if theorem_id in REPORT_BUNDLE:
        reps = run_bundle(ctx, REPORT_BUNDLE[theorem_id], ops, opts, tol)
        return [rep for rep in reps if rep.theorem_id == theorem_id]
    raise ValueError(f"unknown check id {theorem_id!r}")


def _single(reports: list[InequalityReport], theorem_id: str) -> InequalityReport:
    for rep in reports:
        if rep.theorem_id == theorem_id:
            return rep
    raise RuntimeError(f"bundle did not produce {theorem_id}")


def check_base_11(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Chain seminorm/2 <= radius <= seminorm."""
    return run_bundle(ctx, "base_11", {"T": T}, opts, tol)[0]


def check_base_12(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Chain ||K||/4 <= radius^2 <= ||K||/2 with K = sharp(T)T + T sharp(T)."""
    return run_bundle(ctx, "base_12", {"T": T}, opts, tol)[0]


def check_thm21(ctx, S, T, X, opts=DEFAULT_SWEEP, tol=None):
    """Mixed three-operator bound 2||sharp(S)XT|| <= ||S sharp(S)X + XT sharp(T)||."""
    return _single(run_bundle(ctx, "thm21", {"S": S, "T": T, "X": X}, opts, tol),
                   "thm21")


def check_cor22(ctx, S, T, opts=DEFAULT_SWEEP, tol=None):
    """The X = identity case of the three-operator bound."""
    eye = np.eye(ctx.n, dtype=np.complex128)
    return _single(run_bundle(ctx, "thm21", {"S": S, "T": T, "X": eye}, opts, tol),
                   "cor22")


def check_thm23(ctx, S, T, opts=DEFAULT_SWEEP, tol=None):
    """Five bounds around ||S+T||; returns the five reports."""
    return run_bundle(ctx, "thm23", {"S": S, "T": T}, opts, tol)


def check_thm25(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Crawford-refined lower bounds on radius^2; returns three reports."""
    return run_bundle(ctx, "thm25", {"T": T}, opts, tol)


def check_thm27(ctx, S, T, opts=DEFAULT_SWEEP, tol=None):
    """Radius of sharp(T)S against the mean of the squares."""
    return run_bundle(ctx, "thm27", {"S": S, "T": T}, opts, tol)[0]


def check_thm28(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Five radius^2 bounds from the cartesian parts; returns five reports."""
    return run_bundle(ctx, "thm28", {"T": T}, opts, tol)


def check_equality_condition(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """radius^2 = ||K||/2 when A P^2 M^2 vanishes; ConditionNotMet otherwise."""
    return run_bundle(ctx, "eq_cond_28", {"T": T}, opts, tol)[0]


def check_thm29(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Radius bound through ||T^2|| and its comparison chain."""
    return run_bundle(ctx, "thm29", {"T": T}, opts, tol)[0]


def check_thm210(ctx, T, opts=DEFAULT_SWEEP, tol=None):
    """Fourth-power two-sided bound with the squared real part of T^2."""
    return run_bundle(ctx, "thm210", {"T": T}, opts, tol)[0]


@dataclass
class TrialRecord:
    """Everything produced by one trial of the suite."""

    index: int
    n: int
    rank: int
    family: str
    seed_path: tuple
    reports: list[InequalityReport] = field(default_factory=list)
    skipped: dict[str, str] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    fatal: str | None = None


@dataclass
class SuiteResult:
    spec: ensembles.EnsembleSpec
    trials: list[TrialRecord]
    summary: dict


def _evaluate_trial(ctx, ops, index, spec, checks, opts, tol,
                    seed_path) -> TrialRecord:
    rec = TrialRecord(index=index, n=ctx.n, rank=ctx.r, family=spec.family,
                      seed_path=tuple(seed_path))
    try:
        tol_val = DEFAULT_TOL.verdict if tol is None else float(tol)
        ev = _Evaluator(ctx, ops, opts, tol_val)
    except SemiHilbertError as exc:
        rec.fatal = f"{type(exc).__name__}: {exc}"
        return rec
    for bundle_id in checks:
        try:
            rec.reports.extend(run_bundle(ctx, bundle_id, ops, opts, tol, _ev=ev))
        except ConditionNotMet as exc:
            rec.skipped[bundle_id] = str(exc)
        except SemiHilbertError as exc:
            rec.errors[bundle_id] = f"{type(exc).__name__}: {exc}"
    return rec


def _run_trial_from_spec(args) -> TrialRecord:
    spec, index, checks, opts, tol = args
    seed_path = (spec.master_seed, index)
    try:
        ctx, ops = ensembles.generate_trial(spec, index)
    except SemiHilbertError as exc:
        return TrialRecord(index=index, n=spec.n, rank=spec.rank,
                           family=spec.family, seed_path=seed_path,
                           fatal=f"{type(exc).__name__}: {exc}")
    return _evaluate_trial(ctx, ops, index, spec, checks, opts, tol, seed_path)


def summarize(trials: list[TrialRecord], keep_smallest: int = 10) -> dict:
    """Aggregate min slack per check id, counts, and smallest-slack witnesses."""
    per: dict[str, dict] = {}
    smallest: list[tuple[float, str, int, list]] = []
    violations = 0
    skipped = 0
    failed = 0
    for rec in trials:
        skipped += len(rec.skipped)
        if rec.fatal is not None or rec.errors:
            failed += 1
        for rep in rec.reports:
            entry = per.setdefault(rep.theorem_id, {
                "count": 0, "violations": 0,
                "min_slack": None, "min_slack_trial": None,
            })
            entry["count"] += 1
            if not rep.satisfied:
                entry["violations"] += 1
                violations += 1
            ms = rep.min_slack
            if entry["min_slack"] is None or ms < entry["min_slack"]:
                entry["min_slack"] = ms
                entry["min_slack_trial"] = rec.index
            smallest.append((ms, rep.theorem_id, rec.index, list(rec.seed_path)))
    smallest.sort(key=lambda t: (t[0], t[1], t[2]))
    return {
        "per_theorem": {k: per[k] for k in sorted(per)},
        "totals": {
            "trials": len(trials),
            "violations": violations,
            "failed_trials": failed,
            "skipped_checks": skipped,
        },
        "smallest_slacks": [
            {"slack": s, "theorem_id": t, "trial": i, "seed_path": p}
            for s, t, i, p in smallest[:keep_smallest]
        ],
        "empty": len(trials) == 0,
    }


def run_suite(ctx_list, ensemble: ensembles.EnsembleSpec, *,
              checks=None, opts: SweepOptions = DEFAULT_SWEEP,
              tol: float | None = None, jobs: int = 1,
              keep_smallest: int = 10, trial_source=None) -> SuiteResult:
    """Run the check catalog over an ensemble of random trials.

    ``ctx_list`` optionally pins the weights (cycled by trial index)
    instead of drawing one per trial.  ``trial_source`` bypasses
    generation entirely with explicit (ctx, ops) pairs; it exists for
    error-path tests.  Output ordering is by trial index regardless of
    ``jobs``.
    """
    checks = tuple(checks) if checks is not None else ALL_BUNDLES
    for cid in checks:
        if cid not in BUNDLES:
            raise ValueError(f"unknown check id {cid!r}")

    trials: list[TrialRecord] = []
    if trial_source is not None:
        for i, (ctx, ops) in enumerate(trial_source):
            trials.append(_evaluate_trial(ctx, ops, i, ensemble, checks, opts,
                                          tol, ("injected", i)))
    elif ctx_list:
        for i in range(ensemble.count):
            ctx = ctx_list[i % len(ctx_list)]
            _, ops = ensembles.generate_trial(ensemble, i, ctx=ctx)
            trials.append(_evaluate_trial(ctx, ops, i, ensemble, checks, opts,
                                          tol, (ensemble.master_seed, i, "pinned")))
    else:
        work = [(ensemble, i, checks, opts, tol) for i in range(ensemble.count)]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunk = max(1, len(work) // (jobs * 8))
                trials = list(pool.map(_run_trial_from_spec, work,
                                       chunksize=chunk))
        else:
            trials = [_run_trial_from_spec(item) for item in work]
    return SuiteResult(spec=ensemble, trials=trials,
                       summary=summarize(trials, keep_smallest))
