"""Command-line front end.

Four commands: ``compute`` (quantities for one problem file),
``verify`` (randomized inequality suite with a written report),
``tightness`` (hill-climb toward equality in one check), ``range``
(numerical-range boundary points as CSV).

Exit codes: 0 success, 1 verified violations, 2 parse or validation
failure, 3 operator outside the compatible algebra.  The default seed
can be overridden with the SEMIHILBERT_SEED environment variable.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import time

import numpy as np

from . import ensembles, fileio, inequalities
from .context import a_quantities, make_context, membership, sharp, tilde
from .errors import NotInBA, SemiHilbertError
from .linalg import DEFAULT_TOL, MAX_DIM
from .numrange import DEFAULT_SWEEP, SweepOptions, range_boundary

TOOL_VERSION = "0.1.0"
DEFAULT_SEED = 1729
SEED_ENV_VAR = "SEMIHILBERT_SEED"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NOT_MEMBER = 3


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_SEED


def _emit(doc: dict, out_path: str | None) -> None:
    text = fileio.canonical_json(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quantities_dict(q) -> dict:
    return {
        "seminorm": q.seminorm,
        "numerical_radius": q.w,
        "crawford_number": q.c,
        "min_modulus": q.m,
    }


def cmd_compute(args) -> int:
    try:
        A, ops = fileio.load_problem(args.problem)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if "T" not in ops:
        return _fail("problem file must provide operator T")
    try:
        ctx = make_context(A)
    except SemiHilbertError as exc:
        return _fail(str(exc))
    opts = SweepOptions(grid_points=args.grid)
    doc = {
        "n": ctx.n,
        "rank": ctx.r,
        "weight_eigenvalues": [float(v) for v in ctx.eigenvalues],
        "tolerances": {
            "hermitian": ctx.tol.herm,
            "membership": ctx.tol.membership,
            "rank_cutoff": ctx.rank_cutoff,
        },
        "sweep": {
            "grid_points": opts.grid_points,
            "refine_tol": opts.refine_tol,
            "max_refine_iters": opts.max_refine_iters,
        },
        "operators": {},
    }
    for name in sorted(ops):
        M = ops[name]
        res = membership(ctx, M)
        if not res.member:
            sys.stdout.write(fileio.canonical_json({
                "error": "operator outside the compatible algebra",
                "operator": name,
                "residual": res.residual,
                "threshold": res.threshold,
            }))
            return EXIT_NOT_MEMBER
        doc["operators"][name] = {
            "membership": {
                "member": True,
                "residual": res.residual,
                "threshold": res.threshold,
                "borderline": res.borderline,
            },
            "adjoint": fileio.encode_matrix(sharp(ctx, M)),
            "reduced": fileio.encode_matrix(tilde(ctx, M, check=False)),
            "quantities": _quantities_dict(a_quantities(ctx, M, opts)),
        }
    _emit(doc, args.out)
    return EXIT_OK


def _parse_int_list(text: str, what: str, lo: int, hi: int) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise ValueError(f"bad {what} entry {tok!r}")
        if not (lo <= v <= hi):
            raise ValueError(f"{what} entry {v} outside [{lo}, {hi}]")
        if v not in out:
            out.append(v)
    if not out:
        raise ValueError(f"empty {what} list")
    return out


def _resolve_ranks(tokens: str, n: int) -> list[int]:
    """Rank tokens for one dimension: integers or n, n-1, n/2 (ceiling)."""
    out = []
    for tok in tokens.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok == "n":
            r = n
        elif tok == "n-1":
            r = n - 1
        elif tok == "n/2":
            r = (n + 1) // 2
        else:
            try:
                r = int(tok)
            except ValueError:
                raise ValueError(f"bad rank token {tok!r}")
        if 1 <= r <= n and r not in out:
            out.append(r)
    return out


def _resolve_suite(text: str | None):
    """Requested report ids and the bundles that produce them."""
    if text is None:
        report_ids = list(inequalities.ALL_REPORT_IDS)
    else:
        report_ids = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if tok in inequalities.REPORT_BUNDLE:
                ids = [tok]
            elif tok in inequalities.BUNDLES:
                ids = [rid for rid, b in inequalities.REPORT_BUNDLE.items()
                       if b == tok]
            else:
                raise ValueError(f"unknown check id {tok!r}")
            for rid in ids:
                if rid not in report_ids:
                    report_ids.append(rid)
        if not report_ids:
            raise ValueError("empty suite")
    bundles = []
    for rid in report_ids:
        b = inequalities.REPORT_BUNDLE[rid]
        if b not in bundles:
            bundles.append(b)
    return report_ids, bundles


def _cell_seed(master_seed: int, n: int, rank: int, family: str) -> int:
    rng = ensembles.derive_rng(master_seed, "cell", n, rank, family)
    return int(rng.integers(0, 2 ** 63))


def cmd_verify(args) -> int:
    try:
        seed = _resolve_seed(args.seed)
        dims = _parse_int_list(args.dims, "dims", 1, MAX_DIM)
        report_ids, bundles = _resolve_suite(args.suite)
        cells = []
        for n in dims:
            for r in _resolve_ranks(args.ranks, n):
                for fam in ensembles.FAMILIES:
                    cells.append((n, r, fam))
        if not cells:
            raise ValueError("no valid (dim, rank) cells")
        if args.count < 0:
            raise ValueError("count must be nonnegative")
        if args.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if args.tol <= 0:
            raise ValueError("tol must be positive")
    except ValueError as exc:
        return _fail(str(exc))

    t0 = time.perf_counter()
    keep = set(report_ids)
    merged = []
    for n, r, fam in cells:
        spec = ensembles.EnsembleSpec(
            n=n, rank=r, spectrum_law=args.law, family=fam,
            count=args.count, master_seed=_cell_seed(seed, n, r, fam),
        )
        result = inequalities.run_suite(None, spec, checks=bundles,
                                        tol=args.tol, jobs=args.jobs)
        for rec in result.trials:
            rec.reports = [rep for rep in rec.reports if rep.theorem_id in keep]
            rec.index = len(merged)
            merged.append(rec)
    summary = inequalities.summarize(merged)
    summary["wall_time_s"] = time.perf_counter() - t0

    config = {
        "dims": dims,
        "ranks": args.ranks,
        "families": list(ensembles.FAMILIES),
        "law": args.law,
        "count": args.count,
        "seed": seed,
        "tol": args.tol,
        "suite": report_ids,
        "sweep": {
            "grid_points": DEFAULT_SWEEP.grid_points,
            "refine_tol": DEFAULT_SWEEP.refine_tol,
            "max_refine_iters": DEFAULT_SWEEP.max_refine_iters,
        },
        "tolerances": {
            "hermitian": DEFAULT_TOL.herm,
            "reconstruction": DEFAULT_TOL.recon,
            "membership": DEFAULT_TOL.membership,
            "condition": DEFAULT_TOL.condition,
        },
    }
    warnings = []
    for rec in merged:
        for rep in rec.reports:
            for msg in rep.warnings:
                warnings.append(f"trial {rec.index}: {msg}")
    doc = fileio.run_report(TOOL_VERSION, config, seed, merged, summary,
                            warnings)
    _emit(doc, args.out)
    return EXIT_VIOLATION if summary["totals"]["violations"] else EXIT_OK


def cmd_tightness(args) -> int:
    tid = args.theorem
    if tid not in inequalities.BUNDLES and tid not in inequalities.REPORT_BUNDLE:
        return _fail(f"unknown check id {tid!r}")
    try:
        seed = _resolve_seed(args.seed)
        if args.iters < 0:
            raise ValueError("iters must be nonnegative")
    except ValueError as exc:
        return _fail(str(exc))
    bundle = inequalities.REPORT_BUNDLE.get(tid, tid)
    needed, _ = inequalities.BUNDLES[bundle]
    rng_a = ensembles.derive_rng(seed, "tightness", "A")
    A = ensembles.gen_psd(2, 2, "uniform", rng_a)
    ctx = make_context(A)
    start = {}
    for name in needed:
        rng = ensembles.derive_rng(seed, "tightness", name)
        start[name] = ensembles.gen_for_family(ctx, "general_in_BA", rng)
    witness = ensembles.tightness_search(
        ctx, tid, start, iters=args.iters,
        rng=ensembles.derive_rng(seed, "tightness", "walk"),
        seed_path=(seed, "tightness", tid),
    )
    doc = {
        "theorem_id": witness.theorem_id,
        "A": fileio.encode_matrix(witness.A),
        "operators": {k: fileio.encode_matrix(v)
                      for k, v in sorted(witness.operators.items())},
        "chain": [[lab, val] for lab, val in witness.chain],
        "min_slack": witness.min_slack,
        "seed_path": list(witness.seed_path),
        "meta": witness.meta,
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_range(args) -> int:
    try:
        A, ops = fileio.load_problem(args.problem)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if "T" not in ops:
        return _fail("problem file must provide operator T")
    if args.points < 3:
        return _fail("points must be at least 3")
    try:
        ctx = make_context(A)
    except SemiHilbertError as exc:
        return _fail(str(exc))
    res = membership(ctx, ops["T"])
    if not res.member:
        print(f"error: operator T outside the compatible algebra "
              f"(residual {res.residual:.6e})", file=sys.stderr)
        return EXIT_NOT_MEMBER
    B = tilde(ctx, ops["T"], check=False)
    pts = range_boundary(B, args.points)
    buf = io.StringIO()
    buf.write("theta,re,im\n")
    for k, z in enumerate(pts):
        theta = 2.0 * np.pi * k / args.points
        buf.write(f"{theta:.17g},{z.real:.17g},{z.imag:.17g}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semihilbert",
        description="Weighted seminorm, numerical radius and inequality "
                    "verification for finite-dimensional operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="quantities for one problem file")
    p.add_argument("problem", help="path to a problem JSON file")
    p.add_argument("--grid", type=int, default=DEFAULT_SWEEP.grid_points,
                   help="angle sweep grid points")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="randomized inequality suite")
    p.add_argument("--dims", default="2,3,4,6", help="comma list of dimensions")
    p.add_argument("--ranks", default="n,n-1,n/2",
                   help="comma list of rank tokens (n, n-1, n/2, or integers)")
    p.add_argument("--count", type=int, default=250, help="trials per cell")
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (default {DEFAULT_SEED}, or "
                        f"{SEED_ENV_VAR})")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL.verdict,
                   help="verdict tolerance")
    p.add_argument("--law", default="uniform",
                   choices=ensembles.SPECTRUM_LAWS,
                   help="eigenvalue law for random weights")
    p.add_argument("--suite", default=None,
                   help="comma list of check ids (default: all)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", default=None, help="report path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tightness", help="hill-climb toward equality")
    p.add_argument("--theorem", required=True, help="check id to tighten")
    p.add_argument("--iters", type=int, default=800, help="hill-climb steps")
    p.add_argument("--seed", type=int, default=None, help="seed")
    p.add_argument("--out", default=None, help="witness path (default stdout)")
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("range", help="numerical-range boundary CSV")
    p.add_argument("problem", help="path to a problem JSON file")
    p.add_argument("--points", type=int, default=256, help="boundary points")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_range)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SemiHilbertError as exc:
        if isinstance(exc, NotInBA):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NOT_MEMBER
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
