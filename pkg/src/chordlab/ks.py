"""Normalization, histogramming and the one-sample KS test against N(0,1).

The statistic is the exact sup-distance between the empirical cdf of the
sorted sample and the standard normal cdf. The p-value uses the asymptotic
Kolmogorov series Q(lam) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lam^2)
evaluated at lam = (sqrt(M) + 0.12 + 0.11/sqrt(M)) * D, i.e. with the
Stephens small-sample correction; the series is truncated once terms drop
below 1e-12. This matches standard implementations to about 1e-3 in p for
the sample sizes used here (M >= 100).

Samples are normalized with the analytic mean and standard deviation from the
moment formulas, not with sample estimates, so the test probes the shape of
the distribution rather than refitting location and scale. Region counts are
integers, which biases the statistic upward slightly at small sigma; the
acceptance bands are set wide enough to absorb that.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import special

from .distributions import DistanceDistribution, derive_seed, sine_distance
from .moments import moment_set, region_moments
from .simulation import SimulationConfig, run_batch

MIN_KS_SAMPLES = 5
_SERIES_CUTOFF = 1e-12


def std_normal_cdf(x):
    """Standard normal cdf via erf; absolute error below 1e-12."""
    out = special.ndtr(x)
    return float(out) if np.ndim(x) == 0 else out


def normalize(samples, mean: float, sigma: float) -> np.ndarray:
    """Center and scale samples; sigma must be positive."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    return (np.asarray(samples, dtype=np.float64) - mean) / sigma


@dataclass(frozen=True)
class KsReport:
    statistic: float
    p_value: float
    sample_size: int


def _kolmogorov_sf(lam: float) -> float:
    if lam <= 0.0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 1_000_000):
        term = math.exp(-2.0 * (k * lam) ** 2)
        total += sign * term
        if term < _SERIES_CUTOFF:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def ks_one_sample_normal(samples) -> KsReport:
    """One-sample KS test of the samples against the standard normal."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    m = x.size
    if m < MIN_KS_SAMPLES:
        raise ValueError(f"need at least {MIN_KS_SAMPLES} samples, got {m}")
    c = std_normal_cdf(x)
    i = np.arange(1, m + 1, dtype=np.float64)
    d_plus = float(np.max(i / m - c))
    d_minus = float(np.max(c - (i - 1.0) / m))
    statistic = max(d_plus, d_minus)
    lam = (math.sqrt(m) + 0.12 + 0.11 / math.sqrt(m)) * statistic
    return KsReport(statistic=statistic, p_value=_kolmogorov_sf(lam),
                    sample_size=int(m))


@dataclass(frozen=True, eq=False)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray


def histogram(samples, bins: int) -> Histogram:
    """Equal-width histogram over [min, max], top edge inclusive.

    A degenerate range (all samples equal) is widened to 1e-9 so the edges
    stay strictly increasing.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ValueError("histogram needs a nonempty sample")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    lo, hi = float(np.min(x)), float(np.max(x))
    if hi - lo < 1e-9:
        mid = 0.5 * (lo + hi)
        lo, hi = mid - 5e-10, mid + 5e-10
    counts, edges = np.histogram(x, bins=bins, range=(lo, hi))
    return Histogram(bin_edges=edges, counts=counts)


def histogram_to_csv(hist: Histogram) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_left", "bin_right", "count"])
    for left, right, count in zip(hist.bin_edges[:-1], hist.bin_edges[1:],
                                  hist.counts):
        writer.writerow([repr(float(left)), repr(float(right)), int(count)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# end-to-end pipeline: simulate, normalize analytically, test
# ---------------------------------------------------------------------------

def ks_for_batch(n: int, reps: int, dist: DistanceDistribution,
                 seed: int, workers: Optional[int] = None
                 ) -> tuple[KsReport, np.ndarray]:
    """Run one batch and KS-test its analytically normalized region counts."""
    result = run_batch(SimulationConfig(n_chords=n, repetitions=reps,
                                        seed=seed, dist=dist.name),
                       workers=workers, dist=dist)
    rm = region_moments(n, moment_set(dist))
    z = normalize(result.f_values(), rm.mean_f, rm.sigma)
    return ks_one_sample_normal(z), z


def ks_table(ns: Sequence[int], reps: int,
             dist: Optional[DistanceDistribution] = None, seed: int = 0,
             workers: Optional[int] = None) -> list[dict]:
    """One KS row per chord count, each row on its own derived seed space."""
    if dist is None:
        dist = sine_distance()
    rows = []
    for idx, n in enumerate(ns):
        row_seed = derive_seed(seed, 0xD157, idx)
        report, _ = ks_for_batch(n, reps, dist, row_seed, workers=workers)
        rows.append({
            "index": idx,
            "number_of_chords": n,
            "repetition": reps,
            "statistic": report.statistic,
            "p_value": report.p_value,
        })
    return rows


KS_TABLE_COLUMNS = ["index", "number_of_chords", "repetition", "statistic",
                    "p_value"]


def ks_table_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, KS_TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in KS_TABLE_COLUMNS})
    return buf.getvalue()
