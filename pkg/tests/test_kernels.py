"""Backend equivalence: the numba and numpy kernels must agree bitwise."""

import subprocess
import sys

import numpy as np
import pytest

from chordlab import _kernels

TWO_PI = 2.0 * np.pi

needs_numba = pytest.mark.skipif(_kernels.count_crossings_numba is None,
                                 reason="numba backend unavailable")


def _random_chords(rng, n):
    a = rng.random(n) * TWO_PI
    th = rng.random(n) * (np.pi / 2 - 1e-9) + 1e-9
    return a, (a + 2 * th) % TWO_PI


@needs_numba
def test_count_crossings_backends_agree():
    rng = np.random.default_rng(11)
    for n in (0, 1, 2, 3, 17, 200):
        a, b = _random_chords(rng, n)
        assert _kernels.count_crossings_numba(a, b) \
            == _kernels.count_crossings_numpy(a, b)


@needs_numba
def test_pair_crossings_backends_agree():
    rng = np.random.default_rng(12)
    a1, b1 = _random_chords(rng, 50_000)
    a2, b2 = _random_chords(rng, 50_000)
    got_nb = np.asarray(_kernels.pair_crossings_numba(a1, b1, a2, b2))
    got_np = _kernels.pair_crossings_numpy(a1, b1, a2, b2)
    assert np.array_equal(got_nb, got_np)


@needs_numba
def test_region_masks_backends_agree():
    rng = np.random.default_rng(13)
    a, b = _random_chords(rng, 9)
    x1, y1 = np.cos(a), np.sin(a)
    dx, dy = np.cos(b) - x1, np.sin(b) - y1
    inv_len = 1.0 / np.hypot(dx, dy)
    pts = rng.random((5000, 2)) * 2 - 1
    keep = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= 1
    px, py = pts[keep, 0], pts[keep, 1]
    m_nb, ok_nb = _kernels.region_masks_numba(px, py, x1, y1, dx, dy,
                                              inv_len, 1e-9)
    m_np, ok_np = _kernels.region_masks_numpy(px, py, x1, y1, dx, dy,
                                              inv_len, 1e-9)
    assert np.array_equal(np.asarray(ok_nb), ok_np)
    assert np.array_equal(np.asarray(m_nb), m_np)


def test_env_flag_selects_numpy_backend():
    import os
    code = "import chordlab._kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code],
                         env={**os.environ, "CHORDLAB_NO_NUMBA": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_zero_and_single_chord_edge_cases():
    empty = np.empty(0)
    assert _kernels.count_crossings(empty, empty) == 0
    one = np.array([0.5])
    assert _kernels.count_crossings(one, (one + 1.0) % TWO_PI) == 0
