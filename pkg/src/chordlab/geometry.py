"""Chords of the unit circle and exact pairwise crossing predicates.

A chord is stored in polar form: the angle of its left endpoint on the
circumference and the half-angle theta in (0, pi/2], half the central angle
spanned by the chord. The second endpoint sits counterclockwise at
(alpha + 2*theta) mod 2*pi, so theta = pi/2 is a diameter; theta = 0 would be
a point and is rejected at construction.

Two crossing predicates are provided on purpose: ``crosses`` decides by arc
interleaving of the endpoint angles, ``crosses_cartesian`` by signed-area
orientation tests on the Cartesian endpoints. They are independent
implementations of the same event and are checked against each other in the
test suite. Degenerate contacts (shared endpoints, tangencies) have
probability zero under the sampling model and resolve deterministically to
"no crossing" in both predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


class Point2(NamedTuple):
    x: float
    y: float


def normalize_angle(value: float) -> float:
    """Reduce a finite angle in radians to [0, 2*pi); 2*pi maps to 0."""
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {value!r}")
    r = value % TWO_PI
    # float remainder of a tiny negative can round up to 2*pi itself
    return 0.0 if r >= TWO_PI else r


@dataclass(frozen=True)
class Chord:
    """A chord given by its left endpoint angle and half-subtended angle."""

    left_endpoint: float
    half_angle: float

    def __post_init__(self):
        object.__setattr__(self, "left_endpoint",
                           normalize_angle(self.left_endpoint))
        th = self.half_angle
        if not (isinstance(th, (int, float)) and math.isfinite(th)):
            raise ValueError(f"half_angle must be finite, got {th!r}")
        if not 0.0 < th <= HALF_PI:
            raise ValueError(
                f"half_angle must lie in (0, pi/2], got {th!r}")
        object.__setattr__(self, "half_angle", float(th))


def endpoints(chord: Chord) -> tuple[float, float]:
    """The two circle intersections (left endpoint first), in [0, 2*pi)."""
    a = chord.left_endpoint
    return a, normalize_angle(a + 2.0 * chord.half_angle)


def to_cartesian(chord: Chord) -> tuple[Point2, Point2]:
    """Endpoints mapped onto the unit circle via (cos a, sin a)."""
    a, b = endpoints(chord)
    return (Point2(math.cos(a), math.sin(a)),
            Point2(math.cos(b), math.sin(b)))


def chord_from_endpoints(first: float, second: float) -> Chord:
    """Build the chord joining two circumference angles.

    The left endpoint is chosen so that the other endpoint lies within pi
    counterclockwise of it, recovering the canonical (alpha, theta) form.
    """
    a = normalize_angle(first)
    b = normalize_angle(second)
    gap = (b - a) % TWO_PI
    if gap == 0.0:
        raise ValueError("endpoints coincide; not a chord")
    if gap <= math.pi:
        return Chord(a, 0.5 * gap)
    return Chord(b, 0.5 * (TWO_PI - gap))


def _arc_interleave(a1: float, b1: float, a2: float, b2: float) -> bool:
    """Scalar reference predicate; mirrors the array kernels exactly."""
    s1 = (b1 - a1) % TWO_PI
    da = (a2 - a1) % TWO_PI
    db = (b2 - a1) % TWO_PI
    if da == 0.0 or db == 0.0 or da == s1 or db == s1:
        return False
    in_a = 0.0 < da < s1
    in_b = 0.0 < db < s1
    return in_a != in_b


def crosses(c1: Chord, c2: Chord) -> bool:
    """True iff the open chords intersect at an interior point of the disc.

    Decided by arc interleaving: the chords cross iff exactly one endpoint of
    one chord lies strictly inside the counterclockwise arc spanned by the
    other. The pair is put in a canonical order first so the predicate is
    exactly symmetric under argument swap.
    """
    k1 = (c1.left_endpoint, c1.half_angle)
    k2 = (c2.left_endpoint, c2.half_angle)
    if k2 < k1:
        c1, c2 = c2, c1
    a1, b1 = endpoints(c1)
    a2, b2 = endpoints(c2)
    return _arc_interleave(a1, b1, a2, b2)


def _orient(ax, ay, bx, by, cx, cy):
    # twice the signed area of triangle (a, b, c)
    return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def crosses_cartesian(c1: Chord, c2: Chord) -> bool:
    """Independent crossing test via orientation predicates on segments.

    Returns True iff the open segments properly intersect; touching
    configurations (an orientation of exactly zero) count as no crossing.
    """
    p1, p2 = to_cartesian(c1)
    q1, q2 = to_cartesian(c2)
    o1 = _orient(p1.x, p1.y, p2.x, p2.y, q1.x, q1.y)
    o2 = _orient(p1.x, p1.y, p2.x, p2.y, q2.x, q2.y)
    o3 = _orient(q1.x, q1.y, q2.x, q2.y, p1.x, p1.y)
    o4 = _orient(q1.x, q1.y, q2.x, q2.y, p2.x, p2.y)
    return o1 * o2 < 0.0 and o3 * o4 < 0.0


def intersection_point(c1: Chord, c2: Chord) -> Optional[Point2]:
    """Interior intersection of the supporting lines, or None if no crossing."""
    if not crosses(c1, c2):
        return None
    p1, p2 = to_cartesian(c1)
    q1, q2 = to_cartesian(c2)
    d1x, d1y = p2.x - p1.x, p2.y - p1.y
    d2x, d2y = q2.x - q1.x, q2.y - q1.y
    denom = d1x * d2y - d1y * d2x
    if denom == 0.0:  # cannot happen for a crossing pair; guard anyway
        return None
    t = ((q1.x - p1.x) * d2y - (q1.y - p1.y) * d2x) / denom
    return Point2(p1.x + t * d1x, p1.y + t * d1y)


# ---------------------------------------------------------------------------
# array forms used by the simulation engine and bulk agreement checks
# ---------------------------------------------------------------------------

def chords_to_endpoint_arrays(chords) -> tuple[np.ndarray, np.ndarray]:
    """Left and counterclockwise endpoint angles of a chord sequence."""
    a = np.fromiter((c.left_endpoint for c in chords), dtype=np.float64,
                    count=len(chords))
    th = np.fromiter((c.half_angle for c in chords), dtype=np.float64,
                     count=len(chords))
    return a, (a + 2.0 * th) % TWO_PI


def crossings_arrays(a1, b1, a2, b2) -> np.ndarray:
    """Elementwise arc-interleaving crossing indicator (selected backend)."""
    return np.asarray(_kernels.pair_crossings(a1, b1, a2, b2))


def crossings_cartesian_arrays(a1, b1, a2, b2) -> np.ndarray:
    """Elementwise orientation-test crossing indicator on angle arrays."""
    p1x, p1y = np.cos(a1), np.sin(a1)
    p2x, p2y = np.cos(b1), np.sin(b1)
    q1x, q1y = np.cos(a2), np.sin(a2)
    q2x, q2y = np.cos(b2), np.sin(b2)
    o1 = (p1x - q1x) * (p2y - q1y) - (p1y - q1y) * (p2x - q1x)
    o2 = (p1x - q2x) * (p2y - q2y) - (p1y - q2y) * (p2x - q2x)
    o3 = (q1x - p1x) * (q2y - p1y) - (q1y - p1y) * (q2x - p1x)
    o4 = (q1x - p2x) * (q2y - p2y) - (q1y - p2y) * (q2x - p2x)
    return (o1 * o2 < 0.0) & (o3 * o4 < 0.0)
