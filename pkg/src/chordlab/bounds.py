"""Normal-approximation error bounds for the centered, scaled region count.

Two explicit bounds are evaluated, both decaying like n^(-1/2) because the
standard deviation of the region count grows like n^(3/2):

  * a smooth-test-function bound 6 n^(5/2)/sigma^2 + 2 n^4/sigma^3, valid for
    n > 5, normalized to unit sup-norms of the test function and its
    derivative;
  * a Kolmogorov (cdf sup-distance) bound 14 n^4/sigma^3.

The Kolmogorov bound instantiates a generic bound for sums of locally
dependent, bounded variables, 7 n mu (D B)^2 / sigma^3, with the crossing
indicators: n(n-1)/2 summands, mean absolute deviation mu <= 1, a.s. bound
B <= 1, and dependency degree D = 2n - 3 (a pair indicator depends exactly on
the indicators sharing a chord).

At desk-scale n the bounds exceed 1 and are vacuous; they are reported
unclamped with a vacuity annotation since the informative content is the
decay order, checked by the scaling diagnostic.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .distributions import DistanceDistribution
from .moments import moment_set, region_moments


@dataclass(frozen=True)
class RinottParams:
    """Inputs of the generic bound 7 n mu (D B)^2 / sigma^3."""

    n_vars: int
    mu: float
    d: float
    b: float
    sigma: float

    def __post_init__(self):
        if self.n_vars <= 0 or self.mu <= 0 or self.d <= 0 or self.b <= 0 \
                or self.sigma <= 0:
            raise ValueError("all generic-bound parameters must be positive")
        if self.mu > self.b:
            raise ValueError(
                "mean absolute deviation mu cannot exceed the a.s. bound B")


@dataclass(frozen=True)
class SteinBounds:
    n: int
    sigma: float
    smooth_bound: float
    kolmogorov_bound: float

    @property
    def vacuous(self) -> bool:
        return self.smooth_bound > 1.0 or self.kolmogorov_bound > 1.0


def smooth_function_bound(n: int, sigma: float) -> float:
    """Smooth-test-function bound 6 n^(5/2)/sigma^2 + 2 n^4/sigma^3 (n > 5)."""
    if n <= 5:
        raise ValueError("bound valid only for n > 5")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return 6.0 * n ** 2.5 / sigma ** 2 + 2.0 * n ** 4 / sigma ** 3


def kolmogorov_bound(n: int, sigma: float) -> float:
    """Cdf sup-distance bound 14 n^4 / sigma^3."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return 14.0 * n ** 4 / sigma ** 3


def rinott_bound(params: RinottParams) -> float:
    """Generic locally-dependent-sum bound 7 n mu (D B)^2 / sigma^3."""
    return 7.0 * params.n_vars * params.mu * (params.d * params.b) ** 2 \
        / params.sigma ** 3


def chord_model_rinott_params(n: int, sigma: float) -> RinottParams:
    """The generic-bound inputs realized by the crossing indicators."""
    if n < 2:
        raise ValueError("need at least two chords for crossing indicators")
    return RinottParams(n_vars=n * (n - 1) // 2, mu=1.0, d=2.0 * n - 3.0,
                        b=1.0, sigma=sigma)


def stein_bounds(n: int, sigma: float) -> SteinBounds:
    return SteinBounds(n=n, sigma=sigma,
                       smooth_bound=smooth_function_bound(n, sigma),
                       kolmogorov_bound=kolmogorov_bound(n, sigma))


def scaling_diagnostic(dist: DistanceDistribution,
                       ns: Sequence[int]) -> list[dict]:
    """Bounds per n with the decay check column kolmogorov_bound * sqrt(n).

    The last column stabilizes as n grows, exhibiting the n^(-1/2) decay.
    """
    for n in ns:
        if n <= 5:
            raise ValueError("bound valid only for n > 5")
    m = moment_set(dist)
    rows = []
    for n in ns:
        sigma = region_moments(n, m).sigma
        sb = stein_bounds(n, sigma)
        rows.append({
            "n": n,
            "sigma": sigma,
            "smooth_bound": sb.smooth_bound,
            "kolmogorov_bound": sb.kolmogorov_bound,
            "kol_times_sqrt_n": sb.kolmogorov_bound * math.sqrt(n),
        })
    return rows


DIAGNOSTIC_COLUMNS = ["n", "sigma", "smooth_bound", "kolmogorov_bound",
                      "kol_times_sqrt_n"]


def diagnostic_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, DIAGNOSTIC_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in DIAGNOSTIC_COLUMNS})
    return buf.getvalue()


def diagnostic_to_json(rows: Sequence[dict]) -> str:
    annotated = [dict(row, vacuous=(row["smooth_bound"] > 1.0
                                    or row["kolmogorov_bound"] > 1.0))
                 for row in rows]
    return json.dumps(annotated, sort_keys=True, indent=2) + "\n"
