#!/usr/bin/env python3
"""Benchmark the compiled objective kernels against the NumPy fallback.

Runs the two hot kernels at solver-grid and brute-force-grid sizes, plus an
end-to-end optimization under each backend. Inputs are fixed, so repeated
runs are comparable.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

import cyberalloc._kernels as kernels
from cyberalloc import EUTParams, PTParams, Scenario, eval_prob_array, optimize_allocation, template
from cyberalloc._kernels import _reference

try:
    from cyberalloc._kernels import _compiled
except ImportError:
    _compiled = None


def _time(fn, repeats: int) -> float:
    fn()  # warm-up
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def _bench_kernels(backend, n: int, repeats: int) -> dict[str, float]:
    c = np.linspace(0.0, 1000.0, n)
    pi = eval_prob_array(template("pi1"), c)
    pt = lambda: backend.pt_objective(c, pi, 1000.0, 0.3, 0.8, 0.88, 2.25, 0.65)  # noqa: E731
    eut = lambda: backend.eut_objective(c, pi, 10_000.0, 1000.0, 0.3, 0.8, 0.88)  # noqa: E731
    # small grids are cheap; sample them more to beat scheduler noise
    scale = max(1, 200_000 // n)
    return {"pt": _time(pt, repeats * scale), "eut": _time(eut, repeats * scale)}


def _bench_solves(backends: dict, repeats: int) -> dict[str, float]:
    """Per-backend end-to-end solve time, interleaved to cancel machine drift."""
    scenario = Scenario(i_r=0.8)
    curve = template("pi1")
    models = (PTParams(), EUTParams(r=0.88))
    samples: dict[str, list[float]] = {name: [] for name in backends}
    try:
        for _ in range(max(3, repeats)):
            for name, backend in backends.items():
                kernels.pt_objective = backend.pt_objective
                kernels.eut_objective = backend.eut_objective
                start = time.perf_counter()
                for model in models:
                    optimize_allocation(scenario, curve, model)
                samples[name].append((time.perf_counter() - start) / len(models))
    finally:
        kernels.pt_objective = kernels._active.pt_objective
        kernels.eut_objective = kernels._active.eut_objective
    return {name: statistics.median(times) for name, times in samples.items()}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=9)
    args = parser.parse_args()

    backends = {"python": _reference}
    if _compiled is not None:
        backends["compiled"] = _compiled
    else:
        print("note: compiled kernels not built; benchmarking the fallback only\n")

    solve_times = _bench_solves(backends, args.repeats)
    rows = []
    for name, backend in backends.items():
        small = _bench_kernels(backend, 10_001, args.repeats)
        large = _bench_kernels(backend, 1_000_001, max(3, args.repeats // 3))
        rows.append((name, small, large, solve_times[name]))

    header = f"{'backend':9s} {'pt 10k':>10s} {'eut 10k':>10s} {'pt 1M':>10s} {'eut 1M':>10s} {'solve':>10s}"
    print(header)
    print("-" * len(header))
    for name, small, large, solve in rows:
        print(
            f"{name:9s} {small['pt'] * 1e3:8.2f}ms {small['eut'] * 1e3:8.2f}ms "
            f"{large['pt'] * 1e3:8.2f}ms {large['eut'] * 1e3:8.2f}ms {solve * 1e3:8.2f}ms"
        )
    if len(rows) == 2:
        base = rows[0]
        fast = rows[1]
        print(
            f"\nspeedup (compiled vs python): "
            f"pt 1M {base[2]['pt'] / fast[2]['pt']:.2f}x, "
            f"eut 1M {base[2]['eut'] / fast[2]['eut']:.2f}x, "
            f"solve {base[3] / fast[3]:.2f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
