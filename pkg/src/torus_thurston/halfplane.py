"""Upper half-plane geometry.

Points of the half-plane are moduli of marked flat tori.  Hyperbolic
quantities use curvature -4, i.e. the length element sqrt(dx^2 + dy^2) / (2y).
This is half the usual curvature -1 distance, so ``hyp_dist(i, e^2 i) == 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import (
    CoincidentPoints,
    InvalidParameter,
    NonpositiveScale,
    NotInHalfPlane,
    PointNotOnGeodesic,
)

#: Euclidean tolerance used when checking that a point lies on a geodesic.
ON_GEODESIC_TOL = 1e-9

#: The point at infinity of the extended real line.
INFINITY = math.inf


@dataclass(frozen=True)
class HalfPlanePoint:
    re: float
    im: float

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise NotInHalfPlane(f"non-finite coordinates ({re}, {im})")
        if im <= 0.0:
            raise NotInHalfPlane(f"imaginary part must be positive, got {im}")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_complex(cls, z: complex) -> "HalfPlanePoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self):
        return self.z

    def __iter__(self):
        yield self.re
        yield self.im


PointLike = Union[HalfPlanePoint, complex, float, tuple]


def as_point(z: PointLike) -> HalfPlanePoint:
    """Coerce a complex number or an (re, im) pair to a HalfPlanePoint."""
    if isinstance(z, HalfPlanePoint):
        return z
    if isinstance(z, tuple):
        return HalfPlanePoint(*z)
    z = complex(z)
    return HalfPlanePoint(z.real, z.imag)


@dataclass(frozen=True)
class TangentVector:
    base: HalfPlanePoint
    v1: float
    v2: float

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        v1, v2 = float(self.v1), float(self.v2)
        if not (math.isfinite(v1) and math.isfinite(v2)):
            raise InvalidParameter(f"non-finite tangent vector ({v1}, {v2})")
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    @property
    def v(self) -> complex:
        return complex(self.v1, self.v2)


def boundary_point(x: float) -> float:
    """Normalise a point of R u {oo}: both signed infinities become INFINITY."""
    x = float(x)
    if math.isnan(x):
        raise InvalidParameter("boundary point is NaN")
    return INFINITY if math.isinf(x) else x


def is_infinite(x: float) -> bool:
    return math.isinf(x)


@dataclass(frozen=True)
class Semicircle:
    """Geodesic |z - center| = radius.

    ``increasing`` is the orientation: True when traversal moves towards
    ``center + radius`` (real part increasing).
    """

    center: float
    radius: float
    increasing: bool = True

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidParameter(f"semicircle radius must be positive, got {self.radius}")

    def contains(self, z: PointLike, tol: float = ON_GEODESIC_TOL) -> bool:
        z = as_point(z)
        return abs(math.hypot(z.re - self.center, z.im) - self.radius) <= tol * max(1.0, self.radius)


@dataclass(frozen=True)
class Vertical:
    """Geodesic Re z = x; ``upward`` is the orientation."""

    x: float
    upward: bool = True

    def contains(self, z: PointLike, tol: float = ON_GEODESIC_TOL) -> bool:
        return abs(as_point(z).re - self.x) <= tol


HyperbolicGeodesic = Union[Semicircle, Vertical]


def hyp_dist(z1: PointLike, z2: PointLike) -> float:
    """Hyperbolic distance of curvature -4.

    Equal to 1/2 arcosh(1 + |z1 - z2|^2 / (2 y1 y2)); the asinh form keeps full
    relative precision for nearby points.
    """
    z1, z2 = as_point(z1), as_point(z2)
    chord = math.hypot(z1.re - z2.re, z1.im - z2.im)
    return math.asinh(chord / (2.0 * math.sqrt(z1.im * z2.im)))


def geodesic_through(z1: PointLike, z2: PointLike) -> HyperbolicGeodesic:
    """The hyperbolic geodesic through z1 and z2, oriented from z1 to z2."""
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    a, b = z1.re, z1.im
    alpha, beta = z2.re, z2.im
    if a == alpha:
        return Vertical(a, upward=beta > b)
    d = alpha - a
    # offset of z1 from the centre, i.e. a - center; (beta-b)(beta+b) avoids cancellation
    offset = -(d * d + (beta - b) * (beta + b)) / (2.0 * d)
    return Semicircle(a - offset, math.hypot(offset, b), increasing=d > 0)


def geodesic_endpoints(g: HyperbolicGeodesic) -> tuple[float, float]:
    """Endpoints (start, end) of an oriented geodesic.

    The start is the endpoint behind the first point of the orientation; for a
    geodesic built by ``geodesic_through(z1, z2)`` this is x_+ and the end is x_-.
    """
    if isinstance(g, Vertical):
        return (g.x, INFINITY) if g.upward else (INFINITY, g.x)
    lo, hi = g.center - g.radius, g.center + g.radius
    return (lo, hi) if g.increasing else (hi, lo)


def _check_on(g: HyperbolicGeodesic, z: HalfPlanePoint, tol: float):
    if not g.contains(z, tol):
        raise PointNotOnGeodesic(f"{z} is not on {g}")


def arc_frame(g: Semicircle, z1: HalfPlanePoint, z2: HalfPlanePoint) -> tuple[float, float, float]:
    """(side, psi1, psi2): polar angles of z1, z2 about the centre, measured
    from the end of the diameter nearer the arc.

    side is +1 when angles are taken from center + radius and -1 from
    center - radius.  Keeping the angles away from pi preserves the relative
    accuracy of radius * sin(psi) for arcs hugging the real axis.
    """
    u1, u2 = z1.re - g.center, z2.re - g.center
    side = 1.0 if u1 + u2 >= 0 else -1.0
    return side, math.atan2(z1.im, side * u1), math.atan2(z2.im, side * u2)


def arc_point(g: Semicircle, z1: HalfPlanePoint, side: float, psi1: float, psi: float) -> HalfPlanePoint:
    """Point at angle psi in the frame of ``arc_frame``.

    The real part is rebuilt from z1 as R (cos psi - cos psi1) in product form,
    so it does not inherit the rounding of a large centre.
    """
    shift = -2.0 * g.radius * math.sin(0.5 * (psi + psi1)) * math.sin(0.5 * (psi - psi1))
    return HalfPlanePoint(z1.re + side * shift, g.radius * math.sin(psi))


def geodesic_arc_param(
    g: HyperbolicGeodesic,
    z1: PointLike,
    z2: PointLike,
    t: float,
    tol: float = ON_GEODESIC_TOL,
) -> HalfPlanePoint:
    """Point at parameter t in [0, 1] on the arc of g from z1 to z2.

    Semicircles are traversed at constant angular speed about the centre,
    vertical lines at constant speed in log-height.
    """
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    _check_on(g, z1, tol)
    _check_on(g, z2, tol)
    if t == 0:
        return z1
    if t == 1:
        return z2
    if isinstance(g, Vertical):
        return HalfPlanePoint(g.x, z1.im * math.exp(t * math.log(z2.im / z1.im)))
    side, psi1, psi2 = arc_frame(g, z1, z2)
    return arc_point(g, z1, side, psi1, psi1 + t * (psi2 - psi1))


def geodesic_arc_velocity(
    g: HyperbolicGeodesic,
    z1: PointLike,
    z2: PointLike,
    t: float,
) -> complex:
    """d/dt of ``geodesic_arc_param(g, z1, z2, t)``."""
    z1, z2 = as_point(z1), as_point(z2)
    if isinstance(g, Vertical):
        rate = math.log(z2.im / z1.im)
        return complex(0.0, z1.im * math.exp(t * rate) * rate)
    side, psi1, psi2 = arc_frame(g, z1, z2)
    psi = psi1 + t * (psi2 - psi1)
    dpsi = psi2 - psi1
    return complex(-side * g.radius * math.sin(psi) * dpsi, g.radius * math.cos(psi) * dpsi)


def busemann_to_infinity(z0: PointLike, z: PointLike) -> float:
    """Busemann function of the geodesic ray from z0 up to oo, evaluated at z."""
    return 0.5 * math.log(as_point(z0).im / as_point(z).im)


def apply_similarity(lam: float, tau: float, z: PointLike) -> HalfPlanePoint:
    """z -> lam * z + tau, an isometry of the weak metric for lam > 0."""
    if not lam > 0:
        raise NonpositiveScale(f"scale must be positive, got {lam}")
    z = as_point(z)
    return HalfPlanePoint(lam * z.re + tau, lam * z.im)


def mirror(z: PointLike) -> HalfPlanePoint:
    """z -> -conj(z)."""
    z = as_point(z)
    return HalfPlanePoint(-z.re, z.im)
