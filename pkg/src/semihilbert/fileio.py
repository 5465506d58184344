"""Problem-file and report serialization.

One input format and one report format, both JSON.  Complex scalars
are two-element arrays [re, im]; matrices are row-major nested lists
of those pairs.  Report serialization is canonical (sorted keys, fixed
indentation) so identical runs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import numpy as np

from .linalg import MAX_DIM

OPERATOR_NAMES = ("T", "S", "X")


def encode_matrix(M: np.ndarray) -> list:
    M = np.asarray(M, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(obj, n: int | None = None, name: str = "matrix") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{name}: expected a nonempty nested list")
    rows = len(obj)
    out = np.empty((rows, rows if n is None else n), dtype=np.complex128)
    if n is not None and rows != n:
        raise ValueError(f"{name}: expected {n} rows, got {rows}")
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != out.shape[1]:
            raise ValueError(f"{name}: row {i} must have {out.shape[1]} entries")
        for j, cell in enumerate(row):
            if (not isinstance(cell, list) or len(cell) != 2
                    or not all(isinstance(v, (int, float)) for v in cell)):
                raise ValueError(f"{name}[{i}][{j}]: expected [re, im]")
            out[i, j] = complex(cell[0], cell[1])
    if not np.isfinite(out.view(np.float64)).all():
        raise ValueError(f"{name}: entries must be finite")
    return out


def load_problem(path: str) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Read and validate a problem file; returns (A, operators)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("problem file must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or not (1 <= n <= MAX_DIM):
        raise ValueError(f"n must be an integer in [1, {MAX_DIM}]")
    if "A" not in doc:
        raise ValueError("missing weight matrix A")
    A = decode_matrix(doc["A"], n, name="A")
    ops_doc = doc.get("operators")
    if not isinstance(ops_doc, dict) or not ops_doc:
        raise ValueError("operators must be a nonempty object")
    bad = sorted(set(ops_doc) - set(OPERATOR_NAMES))
    if bad:
        raise ValueError(f"unknown operator keys {bad}; allowed: T, S, X")
    ops = {name: decode_matrix(ops_doc[name], n, name=name)
           for name in sorted(ops_doc)}
    return A, ops


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(obj))


def fingerprint(config: dict) -> str:
    """Stable short hash of a configuration mapping."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def load_report_schema() -> dict:
    text = resources.files("semihilbert").joinpath("report_schema.json")
    return json.loads(text.read_text(encoding="utf-8"))


def trial_to_dict(rec) -> dict:
    return {
        "index": rec.index,
        "n": rec.n,
        "rank": rec.rank,
        "family": rec.family,
        "seed_path": list(rec.seed_path),
        "reports": [rep.to_dict() for rep in rec.reports],
        "skipped": dict(sorted(rec.skipped.items())),
        "errors": dict(sorted(rec.errors.items())),
        "fatal": rec.fatal,
    }


def run_report(tool_version: str, config: dict, master_seed: int,
               trials, summary: dict, warnings: list[str]) -> dict:
    return {
        "tool_version": tool_version,
        "config_fingerprint": fingerprint(config),
        "config": config,
        "master_seed": master_seed,
        "trials": [trial_to_dict(rec) for rec in trials],
        "summary": summary,
        "warnings": sorted(set(warnings)),
    }
