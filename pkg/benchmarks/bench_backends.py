"""Throughput comparison of the numba and pure-numpy kernel backends.

Runs the same step kernels on identical data and reports steps/second for
each backend plus the speedup.  The numba functions are warmed up (compiled)
before timing.

    python benchmarks/bench_backends.py [--cells 20000] [--steps 200] \
        [--euler-cells 1800] [--euler-steps 100]
"""

import argparse
import time

import numpy as np

from ltsfv import GasModel, primitives_to_field
from ltsfv.kernels import _numpy as numpy_backend
from ltsfv.kernels._codes import FLUX_BURGERS, SCHEME_ROE

try:
    from ltsfv.kernels import _numba as numba_backend
except ImportError:
    numba_backend = None


def scalar_setup(ncells, k=5):
    rng = np.random.default_rng(0)
    u = rng.uniform(-1.0, 1.0, ncells + 2 * k)
    ratio = 0.95 * k / np.abs(u).max()
    return u, ratio, k


def euler_setup(ncells, k=3):
    rng = np.random.default_rng(1)
    n = ncells + 2 * k
    rho = rng.uniform(0.5, 2.0, n)
    vel = rng.uniform(-0.5, 0.5, n)
    p = rng.uniform(0.5, 2.0, n)
    w = primitives_to_field(rho, vel, p, GasModel(1.4))
    ratio = 0.8 * k / np.max(np.abs(vel) + np.sqrt(1.4 * p / rho))
    return w, ratio, k


def time_backend(fn, steps):
    t0 = time.perf_counter()
    for _ in range(steps):
        fn()
    return steps / (time.perf_counter() - t0)


def bench(name, make_call, steps):
    rates = {}
    for label, backend in (("numpy", numpy_backend), ("numba", numba_backend)):
        if backend is None:
            continue
        call = make_call(backend)
        call()  # warmup / JIT compile
        rates[label] = time_backend(call, steps)
    line = f"{name:24s}" + "".join(f"  {lbl}: {r:9.1f} steps/s" for lbl, r in rates.items())
    if "numba" in rates and "numpy" in rates:
        line += f"  speedup: {rates['numba'] / rates['numpy']:.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cells", type=int, default=20000)
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--euler-cells", type=int, default=1800)
    parser.add_argument("--euler-steps", type=int, default=100)
    args = parser.parse_args()

    if numba_backend is None:
        print("numba unavailable; timing the numpy backend only")

    u, ratio, k = scalar_setup(args.cells)
    bench(f"burgers roe n={args.cells}",
          lambda b: lambda: b.scalar_courant_step(u, ratio, k, SCHEME_ROE,
                                                  0.0, 0.5, FLUX_BURGERS, 0.0),
          args.steps)
    bench(f"burgers godunov n={args.cells}",
          lambda b: lambda: b.burgers_godunov_step(u, ratio, k),
          args.steps)
    w, eratio, ek = euler_setup(args.euler_cells)
    bench(f"euler roe n={args.euler_cells}",
          lambda b: lambda: b.euler_courant_step(w, 1.4, eratio, ek, SCHEME_ROE,
                                                 0.0, 0.5),
          args.euler_steps)


if __name__ == "__main__":
    main()
