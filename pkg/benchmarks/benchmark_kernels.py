#!/usr/bin/env python3
"""Benchmark the hot RK4 kernels: numba JIT vs the pure-numpy fallback.

Usage:
    python benchmarks/benchmark_kernels.py [--steps N] [--repeats R]

The same kernel source runs on both paths (SWANSIM_NUMBA=0 selects the
fallback package-wide; here both are imported side by side).  The first JIT
call includes compilation unless the on-disk cache is warm; it is timed
separately.
"""

import argparse
import time

import numpy as np

from swansim import Metric, MetriplecticState, RealState, SwansonParams, swanson_hamiltonian
from swansim._kernels import (
    NUMBA_ENABLED,
    metriplectic_rk4,
    metriplectic_rk4_numpy,
    riccati_rk4,
    riccati_rk4_numpy,
)


def time_call(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=100_000, help="RK4 steps per run")
    parser.add_argument("--repeats", type=int, default=5, help="repetitions (best time wins)")
    args = parser.parse_args()

    params = SwansonParams(1.0, 0.5)
    model = swanson_hamiltonian(params)
    step = params.period / 10_000
    y0 = np.array([1.0, 0.0, 1.0, 0.0, 1.0, 1.0])
    out = np.empty((args.steps + 1, 6))
    m_args = (model.hess_h, model.lin_h, model.hess_gamma, model.lin_gamma,
              model.const_gamma, y0, step, args.steps, 1e8, out)

    hc = model.hess_complex
    out_c = np.empty(args.steps + 1, dtype=complex)
    r_args = (complex(hc[0, 0]), complex(hc[0, 1]), complex(hc[1, 1]), 1j, step, args.steps, out_c)

    print(f"numba enabled: {NUMBA_ENABLED}")
    print(f"{args.steps} coupled-system RK4 steps, best of {args.repeats}:")

    if NUMBA_ENABLED:
        start = time.perf_counter()
        metriplectic_rk4(*m_args)
        riccati_rk4(*r_args)
        print(f"  jit warm-up (incl. compile/cache load): {time.perf_counter() - start:8.3f} s")

    t_np = time_call(metriplectic_rk4_numpy, *m_args, repeats=args.repeats)
    print(f"  metriplectic numpy fallback:            {t_np:8.3f} s")
    if NUMBA_ENABLED:
        t_jit = time_call(metriplectic_rk4, *m_args, repeats=args.repeats)
        print(f"  metriplectic numba:                     {t_jit:8.3f} s   ({t_np / t_jit:6.1f}x)")

    t_np = time_call(riccati_rk4_numpy, *r_args, repeats=args.repeats)
    print(f"  riccati numpy fallback:                 {t_np:8.3f} s")
    if NUMBA_ENABLED:
        t_jit = time_call(riccati_rk4, *r_args, repeats=args.repeats)
        print(f"  riccati numba:                          {t_jit:8.3f} s   ({t_np / t_jit:6.1f}x)")

    # end-to-end sanity figure: one simulated period at the default step
    init = MetriplecticState(Z=RealState(1.0, 0.0), G=Metric.identity(), n=1.0)
    from swansim import integrate

    start = time.perf_counter()
    integrate(model, init, params.period, step)
    print(f"  one period at default step (active path): {time.perf_counter() - start:6.3f} s")


if __name__ == "__main__":
    main()
