"""Compare the pure-numpy and compiled kernel lanes.

Kernel microbenchmarks import both backend modules directly; the
end-to-end optimizer row re-launches the interpreter with
HYPERBELL_BACKEND set, so it also exercises the import-time selection.

Run:  python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from hyperbell._kernels import pure

try:
    from hyperbell._kernels import _core as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeat=200):
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def bench_kernels():
    rng = np.random.default_rng(0)
    rows = []

    n = 10
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    amps /= np.linalg.norm(amps)
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

    def sweep(mod, a):
        buf = a.copy()
        for bit in range(n):
            mod.apply_single_qubit(buf, bit, h[0, 0], h[0, 1], h[1, 0], h[1, 1])

    rows.append(("H sweep, n=10", timeit(sweep, pure, amps),
                 timeit(sweep, compiled, amps) if compiled else None))

    for nq in (4, 6):
        a = rng.normal(size=2**nq) + 1j * rng.normal(size=2**nq)
        a /= np.linalg.norm(a)
        th = np.arccos(rng.uniform(-1, 1, 2 * nq))
        ph = rng.uniform(0, 2 * np.pi, 2 * nq)
        work = np.empty((6 * nq + 2, 2**nq), dtype=complex)
        rows.append(
            (
                f"mermin_objective, n={nq}",
                timeit(pure.mermin_objective, a, nq, th, ph, work, repeat=500),
                timeit(compiled.mermin_objective, a, nq, th, ph, work, repeat=500)
                if compiled
                else None,
            )
        )
    return rows


def bench_optimizer(lane):
    code = (
        "import time, hyperbell as hb\n"
        "s = hb.catalog_entry('G17').state()\n"
        "t0 = time.perf_counter()\n"
        "r = hb.optimize_mu(s, hb.OptimizationConfig(restarts=5, iterations=2000, seed=0))\n"
        "print(f'{hb.BACKEND_NAME} {time.perf_counter() - t0:.3f} {r.value:.6f}')\n"
    )
    env = dict(os.environ, HYPERBELL_BACKEND=lane)
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    if out.returncode != 0:
        return None, None
    name, secs, value = out.stdout.split()
    assert name == lane
    return float(secs), float(value)


def main():
    print(f"{'kernel':<24} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for name, t_pure, t_comp in bench_kernels():
        if t_comp is None:
            print(f"{name:<24} {t_pure * 1e6:>10.1f}us {'n/a':>12}")
        else:
            print(
                f"{name:<24} {t_pure * 1e6:>10.1f}us {t_comp * 1e6:>10.1f}us "
                f"{t_pure / t_comp:>8.1f}x"
            )

    print()
    print("optimize_mu(G17), 5 restarts x 2000 iters, via HYPERBELL_BACKEND:")
    results = {}
    for lane in ("pure", "compiled"):
        secs, value = bench_optimizer(lane)
        if secs is None:
            print(f"  {lane:<9} unavailable")
        else:
            results[lane] = secs
            print(f"  {lane:<9} {secs:>7.2f}s   mu = {value:.6f}")
    if len(results) == 2:
        print(f"  speedup   {results['pure'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
