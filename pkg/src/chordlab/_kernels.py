"""Hot numeric kernels with two interchangeable backends.

The O(n^2) pairwise crossing count and the point-classification loop of the
region oracle dominate runtime, so both exist as numba ``@njit`` loops and as
broadcast numpy code. The numba path is used when numba imports cleanly;
setting ``CHORDLAB_NO_NUMBA=1`` forces the numpy fallback. Both backends
perform the same IEEE-754 operations in the same order, so their results are
bit-for-bit identical (``benchmarks/bench_kernels.py`` times and checks them
against each other).

Angles are plain float64 radians in [0, 2*pi); a chord is the endpoint pair
(a, b) with b counterclockwise from a by at most pi.
"""

from __future__ import annotations

import math
import os

import numpy as np

TWO_PI = 2.0 * math.pi


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# pure-python sources, jitted below when numba is available
# ---------------------------------------------------------------------------

def _count_crossings_loops(a, b):
    # Arc interleaving: chords (a_i,b_i), (a_j,b_j) cross strictly inside the
    # disc iff exactly one of a_j, b_j lies strictly inside the ccw arc from
    # a_i to b_i. Exact endpoint contact counts as no crossing.
    n = a.shape[0]
    total = 0
    for i in range(n):
        ai = a[i]
        si = (b[i] - ai) % TWO_PI
        for j in range(i + 1, n):
            da = (a[j] - ai) % TWO_PI
            db = (b[j] - ai) % TWO_PI
            if da == 0.0 or db == 0.0 or da == si or db == si:
                continue
            in_a = (da > 0.0) and (da < si)
            in_b = (db > 0.0) and (db < si)
            if in_a != in_b:
                total += 1
    return total


def _pair_crossings_loops(a1, b1, a2, b2, out):
    n = a1.shape[0]
    for i in range(n):
        ai = a1[i]
        si = (b1[i] - ai) % TWO_PI
        da = (a2[i] - ai) % TWO_PI
        db = (b2[i] - ai) % TWO_PI
        if da == 0.0 or db == 0.0 or da == si or db == si:
            out[i] = False
        else:
            in_a = (da > 0.0) and (da < si)
            in_b = (db > 0.0) and (db < si)
            out[i] = in_a != in_b
    return out


def _region_masks_loops(px, py, x1, y1, dx, dy, inv_len, eps, masks, ok):
    # Per-point side-of-line bitmask over <= 32 chord lines. Points closer
    # than eps to any line are flagged not-ok and get mask 0.
    m = px.shape[0]
    n = x1.shape[0]
    for i in range(m):
        acc = np.uint64(0)
        good = True
        for k in range(n):
            d = ((px[i] - x1[k]) * dy[k] - (py[i] - y1[k]) * dx[k]) * inv_len[k]
            if abs(d) <= eps:
                good = False
                break
            if d > 0.0:
                acc |= np.uint64(1) << np.uint64(k)
        if good:
            masks[i] = acc
            ok[i] = True
        else:
            masks[i] = np.uint64(0)
            ok[i] = False
    return masks, ok


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def count_crossings_numpy(a, b):
    """Number of crossing pairs among chords given as endpoint arrays."""
    n = a.shape[0]
    if n < 2:
        return 0
    si = ((b - a) % TWO_PI)[:, None]
    da = (a[None, :] - a[:, None]) % TWO_PI
    db = (b[None, :] - a[:, None]) % TWO_PI
    touch = (da == 0.0) | (db == 0.0) | (da == si) | (db == si)
    in_a = (da > 0.0) & (da < si)
    in_b = (db > 0.0) & (db < si)
    cross = (in_a != in_b) & ~touch
    iu = np.triu_indices(n, k=1)
    return int(np.count_nonzero(cross[iu]))


def pair_crossings_numpy(a1, b1, a2, b2, out=None):
    """Elementwise crossing indicator for chord pairs (a1,b1)[i] vs (a2,b2)[i]."""
    s1 = (b1 - a1) % TWO_PI
    da = (a2 - a1) % TWO_PI
    db = (b2 - a1) % TWO_PI
    touch = (da == 0.0) | (db == 0.0) | (da == s1) | (db == s1)
    cross = (((da > 0.0) & (da < s1)) != ((db > 0.0) & (db < s1))) & ~touch
    if out is not None:
        out[:] = cross
        return out
    return cross


def region_masks_numpy(px, py, x1, y1, dx, dy, inv_len, eps, masks=None, ok=None):
    """Sign-vector bitmasks of points against chord supporting lines."""
    dist = ((px[:, None] - x1[None, :]) * dy[None, :]
            - (py[:, None] - y1[None, :]) * dx[None, :]) * inv_len[None, :]
    good = np.all(np.abs(dist) > eps, axis=1)
    bits = (dist > 0.0).astype(np.uint64)
    acc = np.zeros(px.shape[0], dtype=np.uint64)
    for k in range(x1.shape[0]):
        acc |= bits[:, k] << np.uint64(k)
    acc[~good] = np.uint64(0)
    if masks is not None:
        masks[:] = acc
        ok[:] = good
        return masks, ok
    return acc, good


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

count_crossings_numba = None
pair_crossings_numba = None
region_masks_numba = None

if not _env_flag("CHORDLAB_NO_NUMBA"):
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass
    else:
        _jit = njit(cache=True, nogil=True)
        count_crossings_numba = _jit(_count_crossings_loops)
        _pair_crossings_jit = _jit(_pair_crossings_loops)
        _region_masks_jit = _jit(_region_masks_loops)

        def pair_crossings_numba(a1, b1, a2, b2, out=None):
            if out is None:
                out = np.empty(a1.shape[0], dtype=np.bool_)
            return _pair_crossings_jit(a1, b1, a2, b2, out)

        def region_masks_numba(px, py, x1, y1, dx, dy, inv_len, eps,
                               masks=None, ok=None):
            if masks is None:
                masks = np.empty(px.shape[0], dtype=np.uint64)
                ok = np.empty(px.shape[0], dtype=np.bool_)
            return _region_masks_jit(px, py, x1, y1, dx, dy, inv_len, eps,
                                     masks, ok)

if count_crossings_numba is not None:
    BACKEND = "numba"
    count_crossings = count_crossings_numba
    pair_crossings = pair_crossings_numba
    region_masks = region_masks_numba
else:
    BACKEND = "numpy"
    count_crossings = count_crossings_numpy
    pair_crossings = pair_crossings_numpy
    region_masks = region_masks_numpy


def warm_up() -> None:
    """Trigger JIT compilation outside of timed or threaded sections."""
    a = np.array([0.0, 1.0])
    b = np.array([2.0, 3.0])
    count_crossings(a, b)
    pair_crossings(a, b, b, a)
    pts = np.zeros(2)
    region_masks(pts, pts, a, b, b, a, np.ones(2), 1e-9)
