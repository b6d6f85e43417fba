"""Timing comparison of the compiled and plain-numpy kernel backends.

Run with:  python3 benchmarks/bench_kernels.py

The workload matches the packaged default scenario: 40,000 ticks, 9 gNBs,
4 obstacle boxes.  Both backends produce bit-identical outputs (the test
suite enforces that); this script only reports speed.
"""

import time

import numpy as np

from dcho import kernels


def workload(t=40_000, g=9, b=4, seed=1):
    rng = np.random.default_rng(seed)
    ue = np.column_stack([
        np.full(t, 100.0),
        100.0 + np.arange(t) * (60.0 / 3.6 / 1000.0),
        np.full(t, 1.5),
    ])
    gnb = np.column_stack([
        rng.uniform(0, 200, g), rng.uniform(0, 600, g), rng.uniform(10, 25, g),
    ])
    lo = np.column_stack([
        rng.uniform(40, 110, b), rng.uniform(100, 500, b), np.zeros(b),
    ])
    size = np.column_stack([
        rng.uniform(5, 20, b), rng.uniform(20, 80, b), rng.uniform(10, 20, b),
    ])
    boxes = np.hstack([lo, lo + size])
    noise = rng.standard_normal((t, g))
    rho = np.concatenate([[1.0], np.full(t - 1, np.exp(-0.0166667 / 20.0))])
    sigma = rng.uniform(4, 7, g)
    return ue, gnb, boxes, noise, rho, sigma


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ue, gnb, boxes, noise, rho, sigma = workload()
    rows = []

    t_np = best_of(lambda: kernels.blockage_counts_numpy(ue, gnb, boxes))
    t_sh_np = best_of(lambda: kernels.shadow_series_numpy(noise, rho, sigma))
    rows.append(("blockage_counts", "numpy", t_np))
    rows.append(("shadow_series", "numpy", t_sh_np))

    if kernels.HAS_NUMBA:
        kernels.blockage_counts_numba(ue, gnb, boxes)  # compile outside timing
        kernels.shadow_series_numba(noise, rho, sigma)
        t_nb = best_of(lambda: kernels.blockage_counts_numba(ue, gnb, boxes))
        t_sh_nb = best_of(lambda: kernels.shadow_series_numba(noise, rho, sigma))
        rows.append(("blockage_counts", "numba", t_nb))
        rows.append(("shadow_series", "numba", t_sh_nb))
        a = kernels.blockage_counts_numpy(ue, gnb, boxes)
        b = kernels.blockage_counts_numba(ue, gnb, boxes)
        assert np.array_equal(a, b)
        c = kernels.shadow_series_numpy(noise, rho, sigma)
        d = kernels.shadow_series_numba(noise, rho, sigma)
        assert c.tobytes() == d.tobytes()
    else:
        print("numba not installed; timing the numpy backend only")

    print(f"workload: {ue.shape[0]} ticks x {gnb.shape[0]} gNBs, "
          f"{boxes.shape[0]} boxes")
    print(f"{'kernel':<18}{'backend':<10}{'best of 5':>12}")
    for name, backend, t in rows:
        print(f"{name:<18}{backend:<10}{t * 1000:>10.2f}ms")

    if kernels.HAS_NUMBA:
        print(f"\nspeedup: blockage {t_np / t_nb:.1f}x, "
              f"shadow {t_sh_np / t_sh_nb:.1f}x")


if __name__ == "__main__":
    main()
