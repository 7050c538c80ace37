"""Distance distributions on [0, pi/2] and reproducible chord sampling.

A distance distribution governs the half-angle theta of a chord, which fixes
how far the chord lies from the center (distance cos theta). Chords are drawn
by the inverse-cdf transform with the left endpoint uniform on the
circumference, consuming exactly two uniform variates per chord so that
parallel repetition streams stay reproducible.

Randomness comes from numpy's counter-based Philox generator keyed through
``SeedSequence(seed, spawn_key=(stream,))``. That construction is documented
by numpy as platform-independent and gives statistically independent streams
for distinct stream indices; the algorithm pin is Philox4x64-10 as shipped in
numpy >= 1.24.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import Chord

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

MIN_TABULATED_NODES = 8


def _as_batch(fn):
    """Wrap an array function so scalars in give floats out."""
    def wrapped(x):
        arr = np.asarray(x, dtype=np.float64)
        out = fn(np.atleast_1d(arr))
        return float(out[0]) if arr.ndim == 0 else out
    return wrapped


def _check_unit_interval(u: np.ndarray, what: str = "quantile argument"):
    if np.any(~np.isfinite(u)) or np.any(u < 0.0) or np.any(u > 1.0):
        raise ValueError(f"{what} must lie in [0, 1]")


@dataclass(frozen=True)
class DistanceDistribution:
    """pdf/cdf/quantile triple for the chord half-angle on [0, pi/2].

    ``closed_form_moments`` carries (cross probability, joint cross
    probability) when exact constants are known; quadrature is then used only
    as a cross-check. ``breakpoints`` lists interior kinks of the density
    (grid nodes of tabulated densities) so adaptive quadrature can subdivide
    there.
    """

    name: str
    pdf: Callable
    cdf: Callable
    quantile: Callable
    closed_form_moments: Optional[tuple[float, float]] = None
    breakpoints: Optional[tuple[float, ...]] = None


def sine_distance() -> DistanceDistribution:
    """Density sin(theta): endpoint pairs uniform on the circle."""
    def pdf(t):
        return np.where((t >= 0.0) & (t <= HALF_PI), np.sin(t), 0.0)

    def cdf(t):
        return 1.0 - np.cos(np.clip(t, 0.0, HALF_PI))

    def quantile(u):
        _check_unit_interval(u)
        return np.arccos(1.0 - u)

    return DistanceDistribution(
        name="sine",
        pdf=_as_batch(pdf),
        cdf=_as_batch(cdf),
        quantile=_as_batch(quantile),
        closed_form_moments=(0.5, 8.0 / (3.0 * math.pi ** 2)),
    )


def uniform_distance() -> DistanceDistribution:
    """Constant density 2/pi on [0, pi/2]."""
    def pdf(t):
        return np.where((t >= 0.0) & (t <= HALF_PI), 2.0 / math.pi, 0.0)

    def cdf(t):
        return np.clip(t, 0.0, HALF_PI) * (2.0 / math.pi)

    def quantile(u):
        _check_unit_interval(u)
        return u * HALF_PI

    return DistanceDistribution(
        name="uniform",
        pdf=_as_batch(pdf),
        cdf=_as_batch(cdf),
        quantile=_as_batch(quantile),
        closed_form_moments=(1.0 / 3.0, 2.0 / 15.0),
    )


def tabulated_distance(grid: Sequence[tuple[float, float]],
                       name: str = "tabulated") -> DistanceDistribution:
    """Distribution from (theta, pdf) nodes, piecewise linear in between.

    The grid must be strictly increasing, start at 0, end at pi/2 (within
    1e-9), hold at least 8 nonnegative nodes and carry positive total mass;
    the density is renormalized to integrate to 1. The cdf is the exact
    integral of the interpolant (piecewise quadratic) and the quantile
    inverts it segment-exactly, so cdf(quantile(u)) round-trips to float
    precision.
    """
    pts = [(float(t), float(p)) for t, p in grid]
    if len(pts) < MIN_TABULATED_NODES:
        raise ValueError(
            f"tabulated grid needs at least {MIN_TABULATED_NODES} nodes, "
            f"got {len(pts)}")
    th = np.array([t for t, _ in pts])
    pv = np.array([p for _, p in pts])
    for i in range(len(th) - 1):
        if not th[i + 1] > th[i]:
            raise ValueError(
                f"theta grid must be strictly increasing; node {i + 1} "
                f"(theta={th[i + 1]:.9g}) does not exceed node {i}")
    if abs(th[0]) > 1e-9 or abs(th[-1] - HALF_PI) > 1e-9:
        raise ValueError(
            f"grid must cover [0, pi/2]; got [{th[0]:.9g}, {th[-1]:.9g}]")
    neg = np.nonzero(pv < 0.0)[0]
    if neg.size:
        i = int(neg[0])
        raise ValueError(
            f"pdf value at node {i} (theta={th[i]:.9g}) is negative: {pv[i]:.9g}")
    th[0], th[-1] = 0.0, HALF_PI

    widths = np.diff(th)
    mass = float(np.sum(0.5 * (pv[1:] + pv[:-1]) * widths))
    if mass <= 0.0:
        raise ValueError("tabulated grid has zero total mass")
    p = pv / mass
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (p[1:] + p[:-1]) * widths)))
    cum /= cum[-1]
    cum[-1] = 1.0
    slope = np.diff(p) / widths
    last = len(th) - 2  # index of the final segment

    def pdf(t):
        inside = (t >= 0.0) & (t <= HALF_PI)
        return np.where(inside, np.interp(t, th, p), 0.0)

    def cdf(t):
        x = np.clip(t, 0.0, HALF_PI)
        k = np.clip(np.searchsorted(th, x, side="right") - 1, 0, last)
        dt = x - th[k]
        return cum[k] + dt * (p[k] + 0.5 * slope[k] * dt)

    def quantile(u):
        _check_unit_interval(u)
        k = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, last)
        du = u - cum[k]
        # stable root of the per-segment quadratic mass equation
        disc = np.sqrt(np.maximum(p[k] ** 2 + 2.0 * slope[k] * du, 0.0))
        denom = p[k] + disc
        dt = np.where((du > 0.0) & (denom > 0.0), 2.0 * du / np.where(denom > 0.0, denom, 1.0), 0.0)
        return th[k] + np.minimum(dt, widths[k])

    return DistanceDistribution(
        name=name,
        pdf=_as_batch(pdf),
        cdf=_as_batch(cdf),
        quantile=_as_batch(quantile),
        breakpoints=tuple(th[1:-1]),
    )


def load_tabulated(path: str) -> DistanceDistribution:
    """Read a two-column "theta pdf" text file ('#' starts a comment)."""
    grid = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected 'theta pdf', got {raw.rstrip()!r}")
            try:
                grid.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return tabulated_distance(grid, name=f"table:{path}")


def resolve_distribution(spec: str) -> DistanceDistribution:
    """Map a spec string (sine | uniform | table:<path>) to a distribution."""
    if spec == "sine":
        return sine_distance()
    if spec == "uniform":
        return uniform_distance()
    if spec.startswith("table:"):
        return load_tabulated(spec[len("table:"):])
    raise ValueError(
        f"unknown distribution {spec!r}; expected sine, uniform or table:<path>")


# ---------------------------------------------------------------------------
# randomness
# ---------------------------------------------------------------------------

@dataclass
class RandomStream:
    """One reproducible randomness stream, keyed by (seed, stream index).

    Streams are single-owner mutable state: create one per unit of work
    rather than sharing across threads.
    """

    seed: int
    stream: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.stream < 0:
            raise ValueError("stream index must be nonnegative")
        ss = np.random.SeedSequence(int(self.seed),
                                    spawn_key=(int(self.stream),))
        self.generator = np.random.Generator(np.random.Philox(ss))

    def random(self, size=None):
        return self.generator.random(size)

    def normals(self, size=None):
        return self.generator.standard_normal(size)


def derive_seed(master: int, *path: int) -> int:
    """A fresh 64-bit seed deterministically derived from a master seed.

    Used to give sub-experiments (e.g. the rows of a test table) disjoint
    stream spaces without correlating them with repetition streams.
    """
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(path))
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# chord samplers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChordSampler:
    """A generator of chord endpoint pairs driven by a RandomStream.

    ``draw(stream, count)`` returns normalized endpoint-angle arrays (a, b)
    with b counterclockwise from a by at most pi. The flag records whether
    the construction keeps the left endpoint uniform and independent of the
    half-angle (true for every distance-distribution sampler); samplers
    without that property have no closed-form moments and are handled by
    Monte Carlo estimation only.
    """

    name: str
    endpoints_independent_uniform: bool
    draw: Callable


def sample_chord_arrays(stream: RandomStream, dist: DistanceDistribution,
                        count: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw (alpha, theta) arrays for ``count`` chords.

    Chord i consumes uniforms 2i (left endpoint) and 2i+1 (half-angle), the
    same order as repeated single draws. The half-angle variate is mapped to
    (0, 1] so theta = 0 can never be produced.
    """
    raw = stream.generator.random((count, 2))
    alphas = (TWO_PI * raw[:, 0]) % TWO_PI
    thetas = dist.quantile(1.0 - raw[:, 1])
    return alphas, np.asarray(thetas, dtype=np.float64)


def sample_chord(stream: RandomStream, dist: DistanceDistribution) -> Chord:
    """Draw a single chord: alpha uniform, theta by inverse cdf."""
    raw = stream.generator.random(2)
    alpha = (TWO_PI * raw[0]) % TWO_PI
    theta = dist.quantile(1.0 - raw[1])
    return Chord(alpha, float(theta))


def distribution_sampler(dist: DistanceDistribution) -> ChordSampler:
    """The default sampler: uniform left endpoint, theta from ``dist``."""
    def draw(stream, count):
        a, th = sample_chord_arrays(stream, dist, count)
        return a, (a + 2.0 * th) % TWO_PI

    return ChordSampler(name=dist.name,
                        endpoints_independent_uniform=True,
                        draw=draw)


def diameter_sampler() -> ChordSampler:
    """Every chord a diameter with uniform direction (crossing a.s. certain)."""
    def draw(stream, count):
        a = (TWO_PI * stream.generator.random(count)) % TWO_PI
        return a, (a + math.pi) % TWO_PI

    return ChordSampler(name="diameters",
                        endpoints_independent_uniform=False,
                        draw=draw)


def endpoint_pair_sampler(name: str, draw_endpoints: Callable) -> ChordSampler:
    """Wrap an arbitrary endpoint-pair generator (dependent or nonuniform).

    ``draw_endpoints(stream, count)`` must return two angle arrays; they are
    normalized and oriented so the second endpoint is within pi
    counterclockwise of the first.
    """
    def draw(stream, count):
        e1, e2 = draw_endpoints(stream, count)
        e1 = np.asarray(e1, dtype=np.float64) % TWO_PI
        e2 = np.asarray(e2, dtype=np.float64) % TWO_PI
        gap = (e2 - e1) % TWO_PI
        swap = gap > math.pi
        a = np.where(swap, e2, e1)
        b = np.where(swap, e1, e2)
        return a, b

    return ChordSampler(name=name,
                        endpoints_independent_uniform=False,
                        draw=draw)
