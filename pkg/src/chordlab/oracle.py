"""Independent region counting by sign-vector classification of disc points.

Inside the disc every chord coincides with its full supporting line, so the
arrangement cells are convex and each region is labelled by a unique vector
of side-of-line signs. Classifying points and counting the distinct realized
sign vectors therefore counts regions from below: a point can miss a small
region but can never invent one. This gives a genuinely independent check of
the formula F = R + n + 1 without building the arrangement. Sign vectors are
packed into a 64-bit word, which caps the oracle at 32 chords.

``count_regions_signvector`` classifies a fixed budget of uniform disc points
(rejection-sampled from the bounding square). ``adaptive_oracle`` doubles the
uniform budget until the count is stable across consecutive rounds, and
additionally seeds deterministic corner probes: every region has a corner at
a chord crossing or at a chord endpoint on the circle, so short ladders of
points along the corner sector bisectors certify sliver regions far below
what uniform sampling can reach within any practical budget.

Points closer than 1e-9 to any supporting line are rejected (their side is
numerically ambiguous) and simply replaced by later draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .distributions import (DistanceDistribution, RandomStream,
                            sample_chord_arrays, sine_distance)
from .geometry import Chord, crosses, intersection_point, to_cartesian
from .simulation import count_regions

LINE_EPS = 1e-9
MAX_ORACLE_CHORDS = 32
MIN_ORACLE_POINTS = 1_000
FIRST_ROUND_POINTS = 10_000
DEFAULT_MAX_POINTS = 10_000_000


@dataclass(frozen=True)
class OracleReport:
    formula_count: int
    oracle_count: int
    sample_points: int
    agreed: bool


class _SignVectorCounter:
    """Accumulates distinct sign vectors over batches of disc points."""

    def __init__(self, chords: Sequence[Chord], stream: RandomStream):
        if len(chords) > MAX_ORACLE_CHORDS:
            raise ValueError(
                f"sign-vector oracle supports at most {MAX_ORACLE_CHORDS} "
                f"chords, got {len(chords)}")
        self._stream = stream
        a = np.array([c.left_endpoint for c in chords])
        b = (a + 2.0 * np.array([c.half_angle for c in chords])) \
            % (2.0 * math.pi)
        self._x1, self._y1 = np.cos(a), np.sin(a)
        dx = np.cos(b) - self._x1
        dy = np.sin(b) - self._y1
        self._dx, self._dy = dx, dy
        self._inv_len = 1.0 / np.sqrt(dx * dx + dy * dy) if len(chords) \
            else np.empty(0)
        self._seen = np.empty(0, dtype=np.uint64)
        self.points_used = 0

    def _disc_points(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        xs, ys = [], []
        have = 0
        while have < count:
            need = count - have
            batch = max(int(need * 1.35) + 16, 64)
            pts = self._stream.generator.random((batch, 2)) * 2.0 - 1.0
            keep = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= 1.0
            sel = pts[keep][:need]
            xs.append(sel[:, 0])
            ys.append(sel[:, 1])
            have += sel.shape[0]
        return np.concatenate(xs), np.concatenate(ys)

    def consume_points(self, px: np.ndarray, py: np.ndarray) -> int:
        """Classify explicit points; returns the running region count."""
        masks, ok = _kernels.region_masks(px, py, self._x1, self._y1,
                                          self._dx, self._dy, self._inv_len,
                                          LINE_EPS)
        self._seen = np.union1d(self._seen, np.unique(np.asarray(masks)[ok]))
        self.points_used += px.shape[0]
        return int(self._seen.size)

    def consume(self, count: int) -> int:
        """Classify ``count`` more uniform disc points."""
        return self.consume_points(*self._disc_points(count))


def count_regions_signvector(chords: Sequence[Chord], points: int,
                             stream: RandomStream) -> OracleReport:
    """Classify ``points`` uniform disc points and compare with the formula."""
    if points < MIN_ORACLE_POINTS:
        raise ValueError(f"need at least {MIN_ORACLE_POINTS} points")
    formula = count_regions(chords)
    counter = _SignVectorCounter(chords, stream)
    found = counter.consume(points)
    return OracleReport(formula_count=formula, oracle_count=found,
                        sample_points=counter.points_used,
                        agreed=found == formula)


_PROBE_RADII = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
_PROBE_TILTS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)


def _corner_probes(chords: Sequence[Chord]) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic points near every arrangement corner.

    Every region with at least one chord on its boundary has a corner,
    either where two chords cross or where a chord meets the circle, and
    occupies an angular sector there. Radius ladders along the sector
    bisectors (and tilted off each chord near its endpoints) land inside any
    region whose corner geometry resolves above the 1e-9 line band; that
    covers slivers whose area is far below uniform-sampling resolution.
    Points outside the open disc are dropped; points inside the line band are
    rejected by the classifier like any other point.
    """
    xs: list[float] = []
    ys: list[float] = []

    def ladder(cx, cy, ux, uy):
        for r in _PROBE_RADII:
            xs.append(cx + r * ux)
            ys.append(cy + r * uy)

    carts = [to_cartesian(c) for c in chords]
    for i in range(len(chords)):
        p1, p2 = carts[i]
        li = math.hypot(p2.x - p1.x, p2.y - p1.y)
        u1x, u1y = (p2.x - p1.x) / li, (p2.y - p1.y) / li
        # wedge bisectors at every crossing with a later chord
        for j in range(i + 1, len(chords)):
            if not crosses(chords[i], chords[j]):
                continue
            q1, q2 = carts[j]
            lj = math.hypot(q2.x - q1.x, q2.y - q1.y)
            u2x, u2y = (q2.x - q1.x) / lj, (q2.y - q1.y) / lj
            p = intersection_point(chords[i], chords[j])
            for vx, vy in ((u1x + u2x, u1y + u2y), (u1x - u2x, u1y - u2y)):
                norm = math.hypot(vx, vy)
                if norm == 0.0:
                    continue
                ladder(p.x, p.y, vx / norm, vy / norm)
                ladder(p.x, p.y, -vx / norm, -vy / norm)
        # tilted rays into both sectors at each endpoint of the chord
        for ex, ey, ux, uy in ((p1.x, p1.y, u1x, u1y),
                               (p2.x, p2.y, -u1x, -u1y)):
            for eta in _PROBE_TILTS:
                cos_e, sin_e = math.cos(eta), math.sin(eta)
                ladder(ex, ey, ux * cos_e - uy * sin_e,
                       ux * sin_e + uy * cos_e)
                ladder(ex, ey, ux * cos_e + uy * sin_e,
                       -ux * sin_e + uy * cos_e)

    if not xs:
        return np.empty(0), np.empty(0)
    px = np.asarray(xs)
    py = np.asarray(ys)
    inside = px * px + py * py < 1.0 - 1e-12
    return px[inside], py[inside]


def adaptive_oracle(chords: Sequence[Chord],
                    max_points: int = DEFAULT_MAX_POINTS,
                    stream: Optional[RandomStream] = None) -> OracleReport:
    """Corner probes plus uniform rounds until the region count stabilizes.

    Deterministic corner probes run first, then uniform rounds of 10^4
    points that double the cumulative total; the loop stops when two
    consecutive rounds report the same count or the budget reaches
    ``max_points``.
    """
    if stream is None:
        stream = RandomStream(0)
    formula = count_regions(chords)
    counter = _SignVectorCounter(chords, stream)
    counter.consume_points(*_corner_probes(chords))
    found = counter.consume(min(FIRST_ROUND_POINTS, max_points))
    while counter.points_used < max_points:
        step = min(counter.points_used, max_points - counter.points_used)
        new_found = counter.consume(step)
        if new_found == found:
            found = new_found
            break
        found = new_found
    return OracleReport(formula_count=formula, oracle_count=found,
                        sample_points=counter.points_used,
                        agreed=found == formula)


# ---------------------------------------------------------------------------
# fixed small cases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmallCase:
    description: str
    chords: tuple
    expected: int

    @property
    def formula_count(self) -> int:
        return count_regions(self.chords)


def _triple_crossing() -> tuple[Chord, ...]:
    # three chords spanning 160 degrees each, rotated by 120 degrees: every
    # pair interleaves and the three crossing points are distinct
    theta = math.radians(80.0)
    return (Chord(0.0, theta),
            Chord(math.radians(120.0), theta),
            Chord(math.radians(240.0), theta))


def figure_config() -> tuple[Chord, ...]:
    """Four chords with exactly three crossings: V=11, E=18, F=8."""
    return _triple_crossing() + (Chord(math.radians(5.0), math.radians(5.0)),)


def small_case_table() -> list[SmallCase]:
    """Fixed configurations with hand-counted region counts."""
    quarter = 0.25 * math.pi
    half = 0.5 * math.pi
    return [
        SmallCase("no chords", (), 1),
        SmallCase("one chord", (Chord(0.3, 0.7),), 2),
        SmallCase("two disjoint chords",
                  (Chord(0.0, quarter), Chord(math.pi, quarter)), 3),
        SmallCase("two crossing chords (perpendicular diameters)",
                  (Chord(0.0, half), Chord(half, half)), 4),
        SmallCase("three pairwise-crossing chords, not concurrent",
                  _triple_crossing(), 7),
        SmallCase("four chords with three crossings", figure_config(), 8),
    ]


# ---------------------------------------------------------------------------
# batch verification over random configurations
# ---------------------------------------------------------------------------

def batch_check(count: int, n_max: int, seed: int = 0,
                max_points: int = DEFAULT_MAX_POINTS,
                dist: Optional[DistanceDistribution] = None) -> dict:
    """Run the adaptive oracle over random configurations.

    Configuration k draws its chord count, chords and sample points from the
    stream (seed, k). Reports the agreement rate, how many configurations
    violated the oracle <= formula direction (must be zero) and the worst
    case seen.
    """
    if n_max > MAX_ORACLE_CHORDS:
        raise ValueError(
            f"sign-vector oracle supports at most {MAX_ORACLE_CHORDS} "
            f"chords, got n_max={n_max}")
    if n_max < 0 or count < 1:
        raise ValueError("count must be >= 1 and n_max >= 0")
    if dist is None:
        dist = sine_distance()
    agreed = 0
    overcount = 0
    max_budget = 0
    worst = None
    for k in range(count):
        stream = RandomStream(seed, k)
        n = 0 if n_max == 0 else 1 + int(stream.generator.integers(n_max))
        alphas, thetas = sample_chord_arrays(stream, dist, n)
        chords = [Chord(float(a), float(t)) for a, t in zip(alphas, thetas)]
        report = adaptive_oracle(chords, max_points=max_points, stream=stream)
        max_budget = max(max_budget, report.sample_points)
        if report.agreed:
            agreed += 1
        elif worst is None:
            worst = {"config_index": k, "n": n,
                     "formula_count": report.formula_count,
                     "oracle_count": report.oracle_count,
                     "sample_points": report.sample_points}
        if report.oracle_count > report.formula_count:
            overcount += 1
    return {
        "configurations": count,
        "n_max": n_max,
        "seed": seed,
        "max_points": max_points,
        "agreed": agreed,
        "agreement_rate": agreed / count,
        "overcount_violations": overcount,
        "max_budget_used": max_budget,
        "worst_case": worst,
    }
