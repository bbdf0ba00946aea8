#!/usr/bin/env python3
"""Benchmark the hot kernels under both backends.

Runs the Monte-Carlo distance kernel and the simultaneous root-refinement
sweep with TUBEPOLY_BACKEND=numba and =numpy in subprocesses (backend choice
is import-time) and prints a throughput table.

Usage: python benchmarks/bench_kernels.py [--samples N] [--degree D]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, os, sys, time
import numpy as np
from tubepoly import _kernels
from tubepoly.bodies import parse_body
from tubepoly.oracle import mc_tube_volume
from tubepoly.poly import PiPoly
from fractions import Fraction

samples = int(sys.argv[1])
degree = int(sys.argv[2])

# warm up the jit before timing
mc_tube_volume(parse_body("prod(cube:2,ball:2)"), 0.5, samples=2000, seed=1)

t0 = time.perf_counter()
est = mc_tube_volume(parse_body("prod(cube:2,ball:2)"), 0.5, samples=samples, seed=1)
mc_time = time.perf_counter() - t0

coeffs = np.array([complex(k + 1) for k in range(degree + 1)], dtype=np.complex128)
z0 = np.exp(2j * np.pi * np.arange(degree) / degree) * 1.5
_kernels.aberth_sweeps(coeffs, z0.copy(), tol=1e-14, max_sweeps=3)  # warm
t0 = time.perf_counter()
reps = 20
for _ in range(reps):
    z = z0.copy()
    _kernels.aberth_sweeps(coeffs, z, tol=0.0, max_sweeps=25)
ab_time = (time.perf_counter() - t0) / reps

print(json.dumps({
    "backend": _kernels.BACKEND,
    "mc_samples_per_s": samples / mc_time,
    "mc_time_s": mc_time,
    "aberth_sweeps_per_s": 25 / ab_time,
    "aberth_time_s": ab_time,
}))
"""


def run(backend: str, samples: int, degree: int) -> dict:
    env = dict(os.environ, TUBEPOLY_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, str(samples), str(degree)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=2_000_000)
    ap.add_argument("--degree", type=int, default=120)
    args = ap.parse_args()

    results = {}
    for backend in ("numpy", "numba"):
        try:
            results[backend] = run(backend, args.samples, args.degree)
        except subprocess.CalledProcessError as exc:
            print(f"{backend}: failed\n{exc.stderr}", file=sys.stderr)

    print(f"{'backend':<8} {'MC samples/s':>14} {'Aberth sweeps/s':>16}")
    for backend, r in results.items():
        print(
            f"{r['backend']:<8} {r['mc_samples_per_s']:>14.3e} {r['aberth_sweeps_per_s']:>16.3e}"
        )
    if len(results) == 2:
        mc_ratio = results["numba"]["mc_samples_per_s"] / results["numpy"]["mc_samples_per_s"]
        ab_ratio = (
            results["numba"]["aberth_sweeps_per_s"] / results["numpy"]["aberth_sweeps_per_s"]
        )
        print(f"\nnumba/numpy speedup: MC x{mc_ratio:.2f}, Aberth x{ab_ratio:.2f}")


if __name__ == "__main__":
    main()
