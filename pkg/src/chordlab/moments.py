"""Crossing-probability moments and the derived region-count moments.

For a distance distribution f the probability that two independent chords
cross is a double integral over the ordered half-angles,

    P(cross) = (4/pi) * int_0^{pi/2} int_0^{t} s f(s) ds  f(t) dt,

and the probability that one chord crosses two independent others is

    P(joint) = (4/pi^2) * int_0^{pi/2} m(t)^2 f(t) dt,

where m(t) = E[min(t, T)] = t - int_0^t F(s) ds is the expected minimum of t
and an independent draw T ~ f. The same m gives the single-integral identity
P(cross) = (2/pi) * E[m(T)], which is computed alongside the double integral
as a consistency check. Since m is nonconstant for any continuous f, the
strict inequality P(cross)^2 < P(joint) always holds; a moment set violating
it is treated as invalid input downstream.

With pair count n(n-1)/2 the region count F_n = R_n + n + 1 has

    E[F_n]   = n(n-1)/2 * P(cross) + n + 1,
    Var(R_n) = 1/4 [ 2n(n-1) P(cross) + 4n(n-1)(n-2) P(joint)
                     - n(n-1)(4n-6) P(cross)^2 ].

Quadrature is scipy's adaptive Gauss-Kronrod (QUADPACK) with absolute
tolerance budgets stated per function; inner integrals of nested computations
run 10x tighter than their outer integral.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from .distributions import ChordSampler, DistanceDistribution, RandomStream
from .geometry import crossings_arrays

HALF_PI = 0.5 * math.pi

CROSS_PROB_TOL = 1e-10
JOINT_PROB_TOL = 1e-9
MIN_ANGLE_TOL = 1e-10
CROSS_CHECK_TOL = 1e-8
MIN_MC_TRIALS = 10_000


@dataclass(frozen=True)
class MomentSet:
    """Crossing moments with their provenance.

    e_a12 is the probability that two independent chords cross; e_a12a13 the
    probability that a chord crosses both of two further independent chords.
    """

    e_a12: float
    e_a12a13: float
    source: str  # quadrature | closed-form | monte-carlo
    trials: Optional[int] = None
    se_e_a12: Optional[float] = None
    se_e_a12a13: Optional[float] = None


@dataclass(frozen=True)
class RegionMoments:
    n: int
    mean_f: float
    var_r: float
    sigma: float


def _quad(fn, lo: float, hi: float, tol: float, breakpoints=None) -> float:
    # kinked integrands (tabulated densities) converge cleanly when QUADPACK
    # is told to subdivide at the kinks; dense grids are effectively smooth
    pts = None
    if breakpoints:
        pts = [p for p in breakpoints if lo < p < hi]
        if not pts or len(pts) > 150:
            pts = None
    val, err = integrate.quad(fn, lo, hi, epsabs=tol, epsrel=1e-12,
                              limit=max(400, 4 * len(pts or ())),
                              points=pts)[:2]
    if err > max(50.0 * tol, 1e-12):
        raise RuntimeError(
            f"quadrature did not reach tolerance {tol:g}; achieved {err:g}")
    return val


def expected_min_angle(dist: DistanceDistribution, theta: float) -> float:
    """E[min(theta, T)] for T ~ dist: theta minus the integrated cdf."""
    if not 0.0 <= theta <= HALF_PI:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    if theta == 0.0:
        return 0.0
    return theta - _quad(dist.cdf, 0.0, theta, MIN_ANGLE_TOL,
                         breakpoints=dist.breakpoints)


def _cross_prob_pair_integral(dist: DistanceDistribution) -> float:
    # ordered double integral over (s < t), inner integral 10x tighter
    def inner(t):
        if t <= 0.0:
            return 0.0
        return _quad(lambda s: s * dist.pdf(s), 0.0, t, CROSS_PROB_TOL / 10.0,
                     breakpoints=dist.breakpoints)

    outer = _quad(lambda t: inner(t) * dist.pdf(t), 0.0, HALF_PI,
                  CROSS_PROB_TOL, breakpoints=dist.breakpoints)
    return (4.0 / math.pi) * outer


def _cross_prob_min_angle(dist: DistanceDistribution) -> float:
    # single-integral identity route: (2/pi) E[m(T)]
    outer = _quad(lambda t: expected_min_angle(dist, t) * dist.pdf(t),
                  0.0, HALF_PI, CROSS_PROB_TOL, breakpoints=dist.breakpoints)
    return (2.0 / math.pi) * outer


def expected_cross_prob(dist: DistanceDistribution) -> float:
    """Probability that two independent chords cross.

    Computed by the ordered double integral and cross-checked against the
    single-integral identity route to 1e-8; the double-integral value is
    returned.
    """
    direct = _cross_prob_pair_integral(dist)
    via_min = _cross_prob_min_angle(dist)
    if abs(direct - via_min) > CROSS_CHECK_TOL:
        raise RuntimeError(
            "cross-probability routes disagree: "
            f"double integral {direct!r} vs identity {via_min!r}")
    return direct


def expected_joint_cross_prob(dist: DistanceDistribution) -> float:
    """Probability that one chord crosses both of two independent chords."""
    outer = _quad(lambda t: expected_min_angle(dist, t) ** 2 * dist.pdf(t),
                  0.0, HALF_PI, JOINT_PROB_TOL, breakpoints=dist.breakpoints)
    return (4.0 / math.pi ** 2) * outer


def moment_set(dist: DistanceDistribution) -> MomentSet:
    """Crossing moments for a distribution.

    Closed-form constants are used when the distribution carries them; the
    quadrature path (identity route for the pair probability, which has the
    smoother integrand) covers tabulated densities.
    """
    if dist.closed_form_moments is not None:
        e12, e1213 = dist.closed_form_moments
        return MomentSet(e_a12=e12, e_a12a13=e1213, source="closed-form")
    return MomentSet(e_a12=_cross_prob_min_angle(dist),
                     e_a12a13=expected_joint_cross_prob(dist),
                     source="quadrature")


def region_moments(n: int, moments: MomentSet) -> RegionMoments:
    """Mean region count, crossing-count variance and standard deviation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    e12 = moments.e_a12
    e1213 = moments.e_a12a13
    pairs = n * (n - 1) // 2
    mean_f = pairs * e12 + n + 1
    var_r = 0.25 * (2 * n * (n - 1) * e12
                    + 4 * n * (n - 1) * (n - 2) * e1213
                    - n * (n - 1) * (4 * n - 6) * e12 ** 2)
    if var_r < 0.0:
        raise ValueError(
            "inconsistent moments: variance came out negative, which means "
            f"e_a12^2 = {e12 ** 2!r} exceeds e_a12a13 = {e1213!r}")
    return RegionMoments(n=n, mean_f=float(mean_f), var_r=float(var_r),
                         sigma=math.sqrt(var_r))


def estimate_moments_mc(sampler: ChordSampler, trials: int,
                        stream: RandomStream) -> MomentSet:
    """Monte Carlo moments for samplers without closed-form integrals.

    Each trial draws three i.i.d. chords and records the indicators
    "1 crosses 2" and "1 crosses 2 and 3"; standard errors are the usual
    binomial sqrt(p(1-p)/trials).
    """
    if trials < MIN_MC_TRIALS:
        raise ValueError(f"trials must be >= {MIN_MC_TRIALS}")
    a, b = sampler.draw(stream, 3 * trials)
    a = np.ascontiguousarray(a.reshape(trials, 3).T)
    b = np.ascontiguousarray(b.reshape(trials, 3).T)
    cross12 = crossings_arrays(a[0], b[0], a[1], b[1])
    cross13 = crossings_arrays(a[0], b[0], a[2], b[2])
    p12 = float(np.mean(cross12))
    p_joint = float(np.mean(cross12 & cross13))

    def stderr(p):
        return math.sqrt(p * (1.0 - p) / trials)

    return MomentSet(e_a12=p12, e_a12a13=p_joint, source="monte-carlo",
                     trials=trials, se_e_a12=stderr(p12),
                     se_e_a12a13=stderr(p_joint))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def moment_set_to_dict(m: MomentSet) -> dict:
    out = {"e_a12": m.e_a12, "e_a12a13": m.e_a12a13, "source": m.source}
    if m.source == "monte-carlo":
        out.update(trials=m.trials, se_e_a12=m.se_e_a12,
                   se_e_a12a13=m.se_e_a12a13)
    elif m.source == "quadrature":
        out["tolerances"] = {"e_a12": CROSS_PROB_TOL,
                             "e_a12a13": JOINT_PROB_TOL}
    return out


def region_moments_to_dict(rm: RegionMoments) -> dict:
    return {"n": rm.n, "mean_f": rm.mean_f, "var_r": rm.var_r,
            "sigma": rm.sigma}


def moments_report_json(m: MomentSet, rm: Optional[RegionMoments] = None) -> str:
    out = moment_set_to_dict(m)
    if rm is not None:
        out.update(region_moments_to_dict(rm))
    return json.dumps(out, sort_keys=True, indent=2) + "\n"
