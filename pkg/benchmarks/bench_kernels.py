"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the three kernel entry points on realistic shapes (series degree 6,
winding-quadrature node counts) and an end-to-end 41x41 region map per
backend.  Run as:

    python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from planequil import _kernels_py

try:
    from planequil import _kernels
except ImportError:
    _kernels = None

K = 6
SIZES = (512, 4096, 1 << 16)
REPEAT = 5


def _bench(fn, *args) -> float:
    best = float("inf")
    for _ in range(REPEAT):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(mod) -> dict:
    rng = np.random.default_rng(0)
    a0 = 3.0
    cc = np.ascontiguousarray(rng.normal(size=K) * 0.05)
    ss = np.ascontiguousarray(rng.normal(size=K) * 0.05)
    out = {}
    for n in SIZES:
        phi = np.ascontiguousarray(np.arange(n) * (2 * np.pi / n))
        out[f"eval_series order=1 n={n}"] = _bench(mod.eval_series, a0, cc, ss, phi, 1)
        out[f"eval_series_trio  n={n}"] = _bench(mod.eval_series_trio, a0, cc, ss, phi)
        xs = np.ascontiguousarray(np.cos(phi))
        ys = np.ascontiguousarray(np.sin(phi))
        out[f"turn_angle_sum    n={n}"] = _bench(mod.turn_angle_sum, xs, ys, 0.2, 0.1)
    return out


def bench_region_map(backend: str) -> float:
    code = (
        "import time, planequil as pq\n"
        "b = pq.validate(pq.TrigPolySupport(3.0, (0.0, 0.3), (0.0, 0.0)))\n"
        "t0 = time.perf_counter()\n"
        "pq.region_map(b, (pq.PlanePoint(-2,-2), pq.PlanePoint(2,2)), (41,41), 0.02)\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ, PLANEQUIL_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    return float(res.stdout.strip())


def main() -> None:
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    else:
        print("compiled kernels not available; timing the fallback only\n")

    results = {name: bench_kernels(mod) for name, mod in backends}
    keys = list(results[backends[0][0]])
    width = max(len(k) for k in keys)
    header = f"{'kernel':<{width}}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for k in keys:
        row = f"{k:<{width}}"
        for name, _ in backends:
            row += f"{results[name][k] * 1e6:>10.1f}us"
        if len(backends) == 2:
            row += f"{results['python'][k] / results['cython'][k]:>9.1f}x"
        print(row)

    print("\nend-to-end 41x41 region map:")
    for name, _ in backends:
        print(f"  {name:>7}: {bench_region_map(name):.2f}s")


if __name__ == "__main__":
    main()
