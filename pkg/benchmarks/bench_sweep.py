"""Timing comparison for the angle-sweep kernel backends.

Runs the same rotated-Hermitian-part sweep on each available backend
(compiled extension and pure-Python fallback) over a range of matrix
sizes, checks that the two agree, and prints per-sweep timings.

Usage:
    python benchmarks/bench_sweep.py [--sizes 1,2,3,4,6,8] [--repeats 20]
"""

import argparse
import time

import numpy as np

from semihilbert import backend, derive_rng


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="1,2,3,4,6,8,12,16",
                   help="comma-separated matrix sizes")
    p.add_argument("--repeats", type=int, default=20,
                   help="sweeps per timing sample")
    p.add_argument("--grid", type=int, default=1024,
                   help="coarse grid points per sweep")
    p.add_argument("--seed", type=int, default=7)
    return p.parse_args()


def time_backend(kern, B, grid, repeats):
    # warm once so lazy setup is excluded
    kern.sweep_extremes(B, grid, 1e-10, 200)
    best = np.inf
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeats):
            out = kern.sweep_extremes(B, grid, 1e-10, 200)
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best, out


def main():
    args = parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    names = backend.available()
    kernels = {name: backend.get(name) for name in names}
    print(f"backends: {', '.join(names)}   grid={args.grid}  "
          f"repeats={args.repeats}")
    header = f"{'size':>5}" + "".join(f"{n + ' (ms)':>16}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}{'agree':>10}"
    print(header)
    print("-" * len(header))
    for r in sizes:
        rng = derive_rng(args.seed, "bench", r)
        B = (rng.standard_normal((r, r))
             + 1j * rng.standard_normal((r, r))) / np.sqrt(2 * r)
        times, results = {}, {}
        for name in names:
            times[name], results[name] = time_backend(
                kernels[name], B, args.grid, args.repeats)
        row = f"{r:>5}" + "".join(f"{times[n] * 1e3:>16.3f}" for n in names)
        if len(names) == 2:
            a, b = (results[n] for n in names)
            gap = max(abs(a[0] - b[0]), abs(a[1] - b[1]))
            ratio = times[names[1]] / times[names[0]]
            row += f"{ratio:>10.2f}{'yes' if gap < 1e-9 else 'NO':>10}"
        print(row)


if __name__ == "__main__":
    main()
