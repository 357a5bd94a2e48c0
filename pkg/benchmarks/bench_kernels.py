"""Benchmark the jitted amplitude kernels against the pure-numpy fallback.

Run with `python benchmarks/bench_kernels.py`. Set ADAPTFORGE_NO_NUMBA=1 to
confirm the whole suite still runs on the fallback path (this script then
reports the numpy timings only).
"""

import time

import numpy as np

from adaptforge import kernels


def _random_state(n_qubits, rng):
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return (amps / np.linalg.norm(amps)).astype(np.complex128)


def _time(fn, amps, args, repeats=50):
    fn(amps.copy(), *args)  # warm-up (also triggers jit compilation)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(amps.copy(), *args)
    return (time.perf_counter() - start) / repeats


def main():
    rng = np.random.default_rng(0)
    theta = 0.37
    c, s = np.cos(theta), np.sin(theta)
    print(f"numba enabled: {kernels.USE_NUMBA}")
    header = f"{'qubits':>6} {'kind':>6} {'numpy (ms)':>12}"
    if kernels.USE_NUMBA:
        header += f" {'numba (ms)':>12} {'speedup':>8}"
    print(header)
    for n_qubits in (10, 14, 18, 20):
        amps = _random_state(n_qubits, rng)
        cases = (("single", kernels._single_numpy, (0, 2, c, s)),
                 ("double", kernels._double_numpy, (0, 1, 2, 3, c, s)))
        for kind, numpy_fn, args in cases:
            t_numpy = _time(numpy_fn, amps, args)
            row = f"{n_qubits:>6} {kind:>6} {1e3 * t_numpy:>12.3f}"
            if kernels.USE_NUMBA:
                jit_fn = (kernels._single_numba if kind == "single"
                          else kernels._double_numba)
                t_numba = _time(jit_fn, amps, args)
                row += f" {1e3 * t_numba:>12.3f} {t_numpy / t_numba:>7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
