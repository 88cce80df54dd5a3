"""Compiled versus pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints the best wall time of each kernel under both backends and the
speed-up. Without the compiled extension only the Python column is shown.
"""
import argparse
import timeit

import numpy as np

from retint import _pykernels
from retint.procsim import ProcessConfig, simulate_intervals

try:
    from retint import _kernels
except ImportError:
    _kernels = None


def cases():
    yield "harmonic_sum 1e6 terms", lambda k: k.harmonic_sum(10**6, 0.5)
    yield "harmonic_sum 1e7 terms", lambda k: k.harmonic_sum(10**7, 0.7)
    step = ProcessConfig(0.5, k_max=200, n_events_target=20_000, horizon=200, method="stepwise")
    yield "stepwise 2e4 events, k_max 200", lambda k: simulate_intervals(step, backend=k)
    thin = ProcessConfig(0.5, k_max=10**5, n_events_target=10**5)
    yield "thinning 1e5 events, k_max 1e5", lambda k: simulate_intervals(thin, backend=k)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':34s} {'python [s]':>11s} {'cython [s]':>11s} {'speed-up':>9s}")
    for name, fn in cases():
        tp = best(lambda: fn(_pykernels), args.repeat)
        if _kernels is None:
            print(f"{name:34s} {tp:11.4f} {'n/a':>11s} {'':>9s}")
            continue
        ref = fn(_pykernels)
        got = fn(_kernels)
        same = np.array_equal(ref[0], got[0]) if isinstance(ref, tuple) else np.isclose(ref, got, rtol=1e-13)
        tc = best(lambda: fn(_kernels), args.repeat)
        print(f"{name:34s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}x{'' if same else '  MISMATCH'}")


if __name__ == "__main__":
    main()
