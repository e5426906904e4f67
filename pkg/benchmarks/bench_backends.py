#!/usr/bin/env python3
"""Compare the two rational-arithmetic backends on a fixed workload.

Runs the full verification battery (all four cross-checking suites) in a
fresh subprocess per backend, selected via ``KEDGE_RATIONAL_BACKEND``, so
each measurement includes exactly one backend and its import cost is kept
out of the timed region.  The workload is seed-deterministic, so both
backends do literally the same arithmetic.

Usage:
    python3 benchmarks/bench_backends.py [--samples N] [--repeats R] [--seed S]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

WORKLOAD = """\
import time
from kedge.ratmath import RAT_BACKEND
from kedge.verify import SUITES, run_suites

t0 = time.perf_counter()
results = run_suites(sorted(SUITES), samples={samples}, seed={seed})
elapsed = time.perf_counter() - t0
assert all(r.passed for r in results), "verification failed under this backend"
print(f"{{RAT_BACKEND}} {{elapsed:.6f}}")
"""


def run_backend(backend: str, samples: int, seed: int, repeats: int):
    """Best-of-``repeats`` timing, or None if the backend is unavailable."""
    env = dict(os.environ, KEDGE_RATIONAL_BACKEND=backend)
    best = None
    for _ in range(repeats):
        proc = subprocess.run(
            [sys.executable, "-c", WORKLOAD.format(samples=samples, seed=seed)],
            env=env,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            if "ModuleNotFoundError" in proc.stderr or "ImportError" in proc.stderr:
                return None
            sys.stderr.write(proc.stderr)
            raise SystemExit(f"workload failed under backend {backend!r}")
        reported, elapsed = proc.stdout.split()
        if reported != backend:
            raise SystemExit(
                f"backend override ignored: asked for {backend!r}, got {reported!r}"
            )
        elapsed = float(elapsed)
        best = elapsed if best is None else min(best, elapsed)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=50,
                        help="samples per verification suite (default 50)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="repetitions per backend, best kept (default 3)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"workload: all verification suites, samples={args.samples}, "
          f"seed={args.seed}, best of {args.repeats}")
    wall = time.perf_counter()
    timings = {}
    for backend in ("gmpy2", "fraction"):
        timings[backend] = run_backend(backend, args.samples, args.seed, args.repeats)

    for backend, elapsed in timings.items():
        if elapsed is None:
            print(f"  {backend:<9} unavailable (not importable)")
        else:
            print(f"  {backend:<9} {elapsed:8.3f} s")
    if all(v is not None for v in timings.values()):
        ratio = timings["fraction"] / timings["gmpy2"]
        print(f"  gmpy2 speedup over fraction: {ratio:.2f}x")
    print(f"total benchmark wall time: {time.perf_counter() - wall:.1f} s")


if __name__ == "__main__":
    main()
