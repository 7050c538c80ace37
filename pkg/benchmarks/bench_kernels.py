#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py

Both backends are imported side by side (independent of CHORDLAB_NO_NUMBA)
and checked for bitwise-equal results before timing.
"""

import time

import numpy as np

from chordlab import _kernels

TWO_PI = 2.0 * np.pi


def random_chords(rng, n):
    a = rng.random(n) * TWO_PI
    th = rng.random(n) * (np.pi / 2 - 1e-9) + 1e-9
    return a, (a + 2.0 * th) % TWO_PI


def best_of(fn, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_count_crossings(rng):
    print("count_crossings (pairwise crossing count)")
    print(f"{'n':>8} {'numba ms':>12} {'numpy ms':>12} {'speedup':>9}")
    for n in (100, 300, 1000, 3000):
        a, b = random_chords(rng, n)
        assert _kernels.count_crossings_numba(a, b) \
            == _kernels.count_crossings_numpy(a, b)
        t_nb = best_of(lambda: _kernels.count_crossings_numba(a, b))
        t_np = best_of(lambda: _kernels.count_crossings_numpy(a, b))
        print(f"{n:>8} {t_nb * 1e3:>12.3f} {t_np * 1e3:>12.3f} "
              f"{t_np / t_nb:>8.1f}x")


def bench_pair_crossings(rng):
    print("\npair_crossings (elementwise indicator)")
    print(f"{'pairs':>8} {'numba ms':>12} {'numpy ms':>12} {'speedup':>9}")
    for n in (100_000, 1_000_000):
        a1, b1 = random_chords(rng, n)
        a2, b2 = random_chords(rng, n)
        got_nb = np.asarray(_kernels.pair_crossings_numba(a1, b1, a2, b2))
        got_np = _kernels.pair_crossings_numpy(a1, b1, a2, b2)
        assert np.array_equal(got_nb, got_np)
        t_nb = best_of(lambda: _kernels.pair_crossings_numba(a1, b1, a2, b2))
        t_np = best_of(lambda: _kernels.pair_crossings_numpy(a1, b1, a2, b2))
        print(f"{n:>8} {t_nb * 1e3:>12.3f} {t_np * 1e3:>12.3f} "
              f"{t_np / t_nb:>8.1f}x")


def bench_region_masks(rng):
    print("\nregion_masks (sign-vector classification)")
    print(f"{'points':>8} {'numba ms':>12} {'numpy ms':>12} {'speedup':>9}")
    a, b = random_chords(rng, 8)
    x1, y1 = np.cos(a), np.sin(a)
    dx, dy = np.cos(b) - x1, np.sin(b) - y1
    inv_len = 1.0 / np.hypot(dx, dy)
    for n in (100_000, 1_000_000):
        pts = rng.random((n, 2)) * 2.0 - 1.0
        px, py = pts[:, 0].copy(), pts[:, 1].copy()
        m_nb, ok_nb = _kernels.region_masks_numba(px, py, x1, y1, dx, dy,
                                                  inv_len, 1e-9)
        m_np, ok_np = _kernels.region_masks_numpy(px, py, x1, y1, dx, dy,
                                                  inv_len, 1e-9)
        assert np.array_equal(np.asarray(m_nb), m_np)
        assert np.array_equal(np.asarray(ok_nb), ok_np)
        t_nb = best_of(lambda: _kernels.region_masks_numba(
            px, py, x1, y1, dx, dy, inv_len, 1e-9))
        t_np = best_of(lambda: _kernels.region_masks_numpy(
            px, py, x1, y1, dx, dy, inv_len, 1e-9))
        print(f"{n:>8} {t_nb * 1e3:>12.3f} {t_np * 1e3:>12.3f} "
              f"{t_np / t_nb:>8.1f}x")


def main():
    if _kernels.count_crossings_numba is None:
        raise SystemExit("numba backend unavailable; unset CHORDLAB_NO_NUMBA "
                         "and install numba to run the comparison")
    print(f"active backend: {_kernels.BACKEND}")
    _kernels.warm_up()
    rng = np.random.default_rng(0)
    bench_count_crossings(rng)
    bench_pair_crossings(rng)
    bench_region_masks(rng)


if __name__ == "__main__":
    main()
