"""Seeded Monte Carlo batches: draw n chords, count crossings and regions.

The region count follows from the Euler identity for the arrangement graph
inside the disc: with R crossing points among n chords, V = R + 2n,
E = 2R + 3n, and V - E + F = 1, hence F = R + n + 1. Only the crossing count
is ever computed; the rest is arithmetic.

Batches are reproducible and parallelism-independent: repetition r draws its
chords from a private stream keyed by (seed, r), and results are assembled in
repetition order. The worker count comes from the ``workers`` argument or the
``CHORDLAB_THREADS`` environment variable (0 = one worker per CPU).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .distributions import (DistanceDistribution, RandomStream,
                            resolve_distribution, sample_chord_arrays)
from .geometry import Chord, chords_to_endpoint_arrays

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SimulationConfig:
    n_chords: int
    repetitions: int
    seed: int = 0
    dist: str = "sine"
    debug_checks: bool = False

    def __post_init__(self):
        if self.n_chords < 1:
            raise ValueError("n_chords must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class ArrangementCounts:
    """Vertex/edge/region bookkeeping of a chord arrangement in the disc."""

    n: int
    r: int
    v: int
    e: int
    f: int

    @property
    def euler_characteristic(self) -> int:
        return self.v - self.e + self.f


def arrangement_counts(n: int, r: int) -> ArrangementCounts:
    """Counts implied by n chords with r interior crossings."""
    return ArrangementCounts(n=n, r=r, v=r + 2 * n, e=2 * r + 3 * n,
                             f=r + n + 1)


def count_intersections(chords: Sequence[Chord]) -> int:
    """Number of unordered chord pairs that cross inside the disc."""
    if len(chords) < 2:
        return 0
    a, b = chords_to_endpoint_arrays(chords)
    return int(_kernels.count_crossings(a, b))


def count_regions(chords: Sequence[Chord]) -> int:
    """Number of regions the chords cut the disc into."""
    return count_intersections(chords) + len(chords) + 1


def euler_counts(chords: Sequence[Chord]) -> ArrangementCounts:
    """Full arrangement counts; satisfies V - E + F = 1 by construction."""
    return arrangement_counts(len(chords), count_intersections(chords))


@dataclass(frozen=True)
class SimulationResult:
    """Per-repetition (r_n, f_n) pairs plus summary statistics."""

    config: SimulationConfig
    samples: tuple  # of (r_n, f_n) int pairs, in repetition order
    mean_f: float
    std_f: float
    wall_time: float = field(compare=False, default=0.0)

    def f_values(self) -> np.ndarray:
        return np.array([f for _, f in self.samples], dtype=np.int64)

    def r_values(self) -> np.ndarray:
        return np.array([r for r, _ in self.samples], dtype=np.int64)


def _resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        env = os.environ.get("CHORDLAB_THREADS", "").strip()
        workers = int(env) if env else 1
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers < 0:
        raise ValueError("worker count must be nonnegative")
    return workers


def run_batch(config: SimulationConfig,
              workers: Optional[int] = None,
              dist: Optional[DistanceDistribution] = None) -> SimulationResult:
    """Run all repetitions of a configuration.

    Identical configs give bitwise-identical sample lists regardless of the
    worker count or scheduling, because each repetition owns the stream
    (seed, rep) and output order is fixed. ``dist`` overrides resolution of
    ``config.dist`` for distributions built programmatically.
    """
    if dist is None:
        dist = resolve_distribution(config.dist)
    n = config.n_chords
    n_workers = _resolve_workers(workers)

    def one_rep(rep: int) -> int:
        stream = RandomStream(config.seed, rep)
        alphas, thetas = sample_chord_arrays(stream, dist, n)
        b = (alphas + 2.0 * thetas) % TWO_PI
        r = int(_kernels.count_crossings(alphas, b))
        if config.debug_checks:
            counts = arrangement_counts(n, r)
            assert counts.euler_characteristic == 1
            assert 1 <= counts.f <= n * (n - 1) // 2 + n + 1
        return r

    start = time.perf_counter()
    if n_workers == 1:
        r_values = [one_rep(rep) for rep in range(config.repetitions)]
    else:
        _kernels.warm_up()  # compile before the pool fans out
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            r_values = list(pool.map(one_rep, range(config.repetitions)))
    elapsed = time.perf_counter() - start

    samples = tuple((r, r + n + 1) for r in r_values)
    f = np.array([s[1] for s in samples], dtype=np.float64)
    mean_f = float(np.mean(f))
    std_f = float(np.std(f, ddof=1)) if len(f) > 1 else 0.0
    return SimulationResult(config=config, samples=samples, mean_f=mean_f,
                            std_f=std_f, wall_time=elapsed)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def result_to_dict(result: SimulationResult) -> dict:
    cfg = result.config
    return {
        "config": {
            "n_chords": cfg.n_chords,
            "repetitions": cfg.repetitions,
            "seed": cfg.seed,
            "dist": cfg.dist,
        },
        "samples": [
            {"rep_index": i, "r_n": r, "f_n": f}
            for i, (r, f) in enumerate(result.samples)
        ],
        "summary": {"mean_f": result.mean_f, "std_f": result.std_f},
    }


def result_to_json(result: SimulationResult) -> str:
    return json.dumps(result_to_dict(result), sort_keys=True, indent=2) + "\n"


def result_to_csv(result: SimulationResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rep_index", "r_n", "f_n"])
    for i, (r, f) in enumerate(result.samples):
        writer.writerow([i, r, f])
    return buf.getvalue()
