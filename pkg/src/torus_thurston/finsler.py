"""Weak Finsler structure: tangent norms and path lengths.

The weak norm of delta_p at zeta is (|v| + (1 - p) Im v) / (2 Im zeta).  For
p = 0 it vanishes on straight-down vectors, which is why downward vertical
paths have length zero.  Paths are directed: reversing one changes its length.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import CoincidentPoints, DiscontinuousPath, InvalidParameter
from .halfplane import (
    HalfPlanePoint,
    HyperbolicGeodesic,
    PointLike,
    TangentVector,
    Vertical,
    arc_frame,
    as_point,
    geodesic_through,
)
from .thurston import VERTICAL_TOL, check_p

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(5)
# Richardson factor for a method with error O(h^10)
_RICHARDSON = 2.0**10 - 1.0
_MAX_DOUBLINGS = 4
CONTINUITY_TOL = 1e-9
#: Arcs shorter than this times their lower height are integrated along the chord.
SHORT_ARC = 1e-6


def norm_delta_p(p: float, tv: TangentVector) -> float:
    p = check_p(p)
    return float(_density(p, tv.base.im, tv.v1, tv.v2))


def norm_delta(tv: TangentVector) -> float:
    return norm_delta_p(0.0, tv)


@dataclass(frozen=True)
class Polyline:
    vertices: tuple

    def __post_init__(self):
        vertices = tuple(as_point(v) for v in self.vertices)
        if len(vertices) < 2:
            raise InvalidParameter("a polyline needs at least two vertices")
        object.__setattr__(self, "vertices", vertices)

    @property
    def start(self) -> HalfPlanePoint:
        return self.vertices[0]

    @property
    def end(self) -> HalfPlanePoint:
        return self.vertices[-1]


@dataclass(frozen=True)
class GeodesicArc:
    start: HalfPlanePoint
    end: HalfPlanePoint
    geodesic: Optional[HyperbolicGeodesic] = None

    def __post_init__(self):
        start, end = as_point(self.start), as_point(self.end)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        if self.geodesic is None:
            object.__setattr__(self, "geodesic", geodesic_through(start, end))
        elif not (self.geodesic.contains(start) and self.geodesic.contains(end)):
            raise InvalidParameter("arc endpoints are not on the given geodesic")


Segment = Union[Polyline, GeodesicArc]


@dataclass(frozen=True)
class PiecewisePath:
    segments: tuple = field(default_factory=tuple)

    def __post_init__(self):
        segments = tuple(self.segments)
        if not segments:
            raise InvalidParameter("a path needs at least one segment")
        for prev, nxt in zip(segments, segments[1:]):
            gap = abs(prev.end.z - nxt.start.z)
            if gap > CONTINUITY_TOL:
                raise DiscontinuousPath(f"segments do not join: {prev.end} vs {nxt.start} (gap {gap:.3g})")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def of(cls, *segments: Segment) -> "PiecewisePath":
        return cls(segments)

    @property
    def start(self) -> HalfPlanePoint:
        return self.segments[0].start

    @property
    def end(self) -> HalfPlanePoint:
        return self.segments[-1].end


@dataclass(frozen=True)
class QuadratureConfig:
    subdivisions: int = 256
    richardson: bool = True
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.subdivisions < 2:
            raise InvalidParameter(f"subdivisions must be at least 2, got {self.subdivisions}")


def _density(p, y, vx, vy):
    """(|v| + (1 - p) Im v) / (2 y), with |v| + Im v rewritten as
    vx^2 / (|v| - Im v) for downward v so nearly straight-down vectors keep
    their relative accuracy."""
    vx, vy = np.asarray(vx, dtype=float), np.asarray(vy, dtype=float)
    speed = np.hypot(vx, vy)
    with np.errstate(divide="ignore", invalid="ignore"):
        down = np.where(speed - vy > 0, vx * vx / (speed - vy), 0.0)
    up_part = np.where(vy >= 0, speed + vy, down)
    return (up_part - p * vy) / (2.0 * y)


def _gauss_legendre(integrand, breaks: np.ndarray) -> float:
    """Composite 5-point Gauss-Legendre over consecutive breakpoints in [0, 1]."""
    lo, hi = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (hi - lo)
    t = lo + half * (_GL_NODES + 1.0)
    vals = integrand(t) * (_GL_WEIGHTS * half)
    # fixed summation order: per interval, then across intervals
    return float(np.sum(np.sum(vals, axis=1)))


def _edge_breaks(y0: float, y1: float, n: int) -> np.ndarray:
    """Breakpoints in t for the affine edge; geometric in height so every
    interval sees a bounded ratio of Im values."""
    if abs(math.log(y1 / y0)) < 1e-3:
        return np.linspace(0.0, 1.0, n + 1)
    ys = y0 * (y1 / y0) ** (np.arange(n + 1) / n)
    t = (ys - y0) / (y1 - y0)
    t[0], t[-1] = 0.0, 1.0
    return t


def _edge_length(p: float, u: HalfPlanePoint, w: HalfPlanePoint, n: int) -> float:
    vx, vy = w.re - u.re, w.im - u.im
    if vx == 0.0 and vy == 0.0:
        return 0.0

    def integrand(t):
        return _density(p, u.im + t * vy, vx, vy)

    return _gauss_legendre(integrand, _edge_breaks(u.im, w.im, n))


def _arc_length(p: float, arc: GeodesicArc, n: int) -> float:
    g, z1, z2 = arc.geodesic, arc.start, arc.end
    low = min(z1.im, z2.im)
    if abs(z2.z - z1.z) <= SHORT_ARC * low:
        # the chord is within O(SHORT_ARC^2) of the arc
        return _edge_length(p, z1, z2, n)
    if isinstance(g, Vertical) or abs(z2.re - z1.re) < VERTICAL_TOL * max(z1.im, z2.im):
        rate = math.log(z2.im / z1.im)
        if p == 0.0 and rate <= 0.0:
            return 0.0
        # constant speed in log-height: y(t) = y1 e^{t rate}
        return _gauss_legendre(
            lambda t: _density(p, z1.im * np.exp(t * rate), 0.0, z1.im * np.exp(t * rate) * rate),
            np.linspace(0.0, 1.0, n + 1),
        )
    r = g.radius
    _, phi1, phi2 = arc_frame(g, z1, z2)  # the mirror side does not change |v| or Im v
    dphi = phi2 - phi1
    # breakpoints equidistributed in hyperbolic arclength, 1/2 log tan(phi / 2)
    s1, s2 = math.log(math.tan(phi1 / 2.0)), math.log(math.tan(phi2 / 2.0))
    phis = 2.0 * np.arctan(np.exp(s1 + (s2 - s1) * np.arange(n + 1) / n))
    breaks = (phis - phi1) / dphi
    breaks[0], breaks[-1] = 0.0, 1.0

    def integrand(t):
        phi = phi1 + t * dphi
        return _density(p, r * np.sin(phi), -r * np.sin(phi) * dphi, r * np.cos(phi) * dphi)

    return _gauss_legendre(integrand, breaks)


def _segment_length(p: float, seg: Segment, n: int) -> float:
    if isinstance(seg, GeodesicArc):
        if seg.start == seg.end:
            return 0.0
        return _arc_length(p, seg, n)
    return sum(_edge_length(p, u, w, n) for u, w in zip(seg.vertices, seg.vertices[1:]))


def path_length(p: float, path: Union[PiecewisePath, Segment], cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Integral of the delta_p weak norm along a directed piecewise-C^1 path."""
    p = check_p(p)
    if not isinstance(path, PiecewisePath):
        path = PiecewisePath.of(path)
    total = 0.0
    for seg in path.segments:
        n = cfg.subdivisions
        coarse = _segment_length(p, seg, n)
        for _ in range(_MAX_DOUBLINGS):
            fine = _segment_length(p, seg, 2 * n)
            diff = fine - coarse
            if cfg.richardson:
                fine += diff / _RICHARDSON
            coarse, n = fine, 2 * n
            if abs(diff) <= cfg.rel_tol * (1.0 + abs(fine)):
                break
        total += coarse
    return total


def geodesic_length_closed_form(p: float, z1: PointLike, z2: PointLike) -> float:
    """delta_p-length of the hyperbolic geodesic arc from z1 to z2, in closed form.

    For a semicircular arc the length of the delta-norm integral is
    1/2 log(1 + cos theta2) - 1/2 log(1 + cos theta1), where theta1, theta2 are
    the polar angles of z1, z2 about the centre; delta_p adds the Busemann
    term p/2 log(Im z1 / Im z2).  Does not go through the explicit formula
    for delta, so it serves as an independent check of it.
    """
    p = check_p(p)
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    b, beta = z1.im, z2.im
    busemann = 0.5 * p * math.log(b / beta)
    d = abs(z2.re - z1.re)  # mirroring makes z2 lie to the right
    if d < VERTICAL_TOL * max(b, beta):
        return busemann + (math.log(beta / b) if beta > b else 0.0)
    a_coef = d * d + (beta - b) * (beta + b)
    h = math.hypot(a_coef, 2.0 * b * d)  # = 2 d R
    e_coef = d * d - (beta - b) * (beta + b)  # 2 d^2 - A
    # h (1 + cos theta1) and h (1 + cos theta2), each without cancellation
    one_plus_cos1 = h - a_coef if a_coef <= 0 else 4.0 * b * b * d * d / (h + a_coef)
    one_plus_cos2 = h + e_coef if e_coef >= 0 else 4.0 * d * d * beta * beta / (h - e_coef)
    return busemann + 0.5 * math.log(one_plus_cos2 / one_plus_cos1)

