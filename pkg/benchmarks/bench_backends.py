"""Timing comparison between the active kernels and their python twins.

Run from the repository root:

    python3 benchmarks/bench_backends.py
    CMUR_NUMBA=0 python3 benchmarks/bench_backends.py

With numba disabled the active and fallback entries are the same callables,
so the table degenerates to a sanity check of the fallback cost.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cmur import _backend, _kernels
from cmur.bounds import SearchConfig, conditional_bound
from cmur.qcore import ProjectiveMeasurement, assemblage, build_state
from cmur.steering import fibonacci_hemisphere


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def carlson_workload(n: int):
    rng = np.random.default_rng(0)
    triples = [tuple(row) for row in rng.random((n, 3)) * 4.0]

    def run(rf, rd):
        acc = 0.0
        for x, y, z in triples:
            acc += rf(x, y, z) + rd(x, y, z)
        return acc

    return run


def search_workload(n_states: int):
    rng = np.random.default_rng(1)
    cases = []
    for i in range(n_states):
        rho = build_state("random_mixed", seed=i)
        x = ProjectiveMeasurement.from_bloch_angles(
            float(rng.uniform(0, np.pi)), float(rng.uniform(0, 2 * np.pi))
        )
        w, v = assemblage(rho, x).bloch_decomposition()
        theta = np.arccos(1.0 - 2.0 * rng.random(32))
        phi = 2.0 * np.pi * rng.random(32)
        starts = np.column_stack([theta, phi])
        cases.append((np.ascontiguousarray(w), np.ascontiguousarray(v), starts))

    def run(kernel):
        acc = 0.0
        for w, v, starts in cases:
            acc += kernel(w, v, starts, 200, 1e-10)[0]
        return acc

    return run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--triples", type=int, default=20000, help="Carlson evaluations")
    ap.add_argument("--searches", type=int, default=24, help="measurement searches")
    ap.add_argument("--dirs", type=int, default=400000, help="hemisphere directions")
    ap.add_argument("--repeat", type=int, default=3, help="timing repeats (best kept)")
    args = ap.parse_args()

    print(f"numba active: {_backend.USING_NUMBA}")

    rows = []

    run = carlson_workload(args.triples)
    run(_kernels.carlson_rf, _kernels.carlson_rd)  # warm-up / JIT
    t_active = best_of(lambda: run(_kernels.carlson_rf, _kernels.carlson_rd), args.repeat)
    t_py = best_of(lambda: run(_kernels.carlson_rf_py, _kernels.carlson_rd_py), args.repeat)
    rows.append((f"carlson rf+rd x{args.triples}", t_active, t_py))

    run = search_workload(args.searches)
    run(_kernels.qubit_k1_search)
    t_active = best_of(lambda: run(_kernels.qubit_k1_search), args.repeat)
    t_py = best_of(lambda: run(_kernels.qubit_k1_search_py), args.repeat)
    rows.append((f"qubit_k1_search x{args.searches}", t_active, t_py))

    dirs = fibonacci_hemisphere(args.dirs)
    tau_sq = np.array([0.9, 0.5, 0.2])
    _kernels.hemisphere_mean(dirs, tau_sq)
    t_active = best_of(lambda: _kernels.hemisphere_mean(dirs, tau_sq), args.repeat)
    t_py = best_of(lambda: _kernels.hemisphere_mean_py(dirs, tau_sq), args.repeat)
    t_np = best_of(lambda: _kernels.hemisphere_mean_numpy(dirs, tau_sq), args.repeat)
    rows.append((f"hemisphere_mean x{args.dirs}", t_active, t_py))
    rows.append((f"  (numpy twin)", t_np, t_py))

    rho = build_state("psi_xi", xi=np.pi / 8)
    x = ProjectiveMeasurement.from_bloch_angles(1.1, 0.0)
    cfg = SearchConfig(starts=32)
    conditional_bound(rho, x, cfg)
    t_active = best_of(lambda: conditional_bound(rho, x, cfg), args.repeat)
    rows.append(("conditional_bound end-to-end", t_active, None))

    print(f"\n{'workload':<34}{'active':>10}{'python':>10}{'speedup':>9}")
    for name, ta, tp in rows:
        if tp is None:
            print(f"{name:<34}{ta:>9.4f}s{'-':>10}{'-':>9}")
        else:
            print(f"{name:<34}{ta:>9.4f}s{tp:>9.4f}s{tp / ta:>8.1f}x")
    if not _backend.USING_NUMBA:
        print("\nactive == python fallback (set CMUR_NUMBA=1 with numba installed)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
