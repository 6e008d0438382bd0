"""Time the numba kernels against the numpy fallback on random Lusztig data.

    python benchmarks/bench_kernels.py --rows 100000
"""

import argparse
import time

import numpy as np

from krcrystal import _kernels
from krcrystal.model import all_models
from krcrystal.paths import eps_star_paths
from krcrystal.trails import eps_star_trails


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy timings are meaningful")
    rng = np.random.default_rng(args.seed)
    print(f"{'model':6s} {'kernel':7s} {'numpy s':>9s} {'numba s':>9s} {'speedup':>8s}")
    for m in all_models():
        C = rng.integers(0, 5, size=(args.rows, m.M), dtype=np.int64)
        for name, fn in (("trails", eps_star_trails), ("paths", eps_star_paths)):
            fn(m, C[:10], use="numba")  # compile outside the timing
            t_np, a = best_of(lambda: fn(m, C, use="numpy"), args.repeat)
            t_nb, b = best_of(lambda: fn(m, C, use="numba"), args.repeat)
            assert np.array_equal(a, b), "backends disagree"
            print(f"{m.key:6s} {name:7s} {t_np:9.3f} {t_nb:9.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
