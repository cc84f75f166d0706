"""Sampled curves: unit tangent circles and metric spheres.

Unit circles live in the tangent plane (coordinates v1, v2); spheres live in
the half-plane itself.  Everything is returned as a Polyline2D of (u, v)
pairs, ready for plotting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParabola, InvalidParameter, RootNotBracketed
from .halfplane import HalfPlanePoint, PointLike, as_point
from .thurston import check_p, delta

#: Largest hyperbolic distance searched along a ray by backward_ball_boundary.
BACKWARD_SEARCH_CAP = 50.0


@dataclass(frozen=True)
class Polyline2D:
    points: np.ndarray  # shape (n, 2)
    closed: bool

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts) < 2:
            raise InvalidParameter("a polyline needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise InvalidParameter("polyline has non-finite coordinates")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def as_complex(self) -> np.ndarray:
        return self.points[:, 0] + 1j * self.points[:, 1]


def _check_n(n: int, least: int):
    if n < least:
        raise InvalidParameter(f"need at least {least} samples, got {n}")


def unit_circle_delta(z: PointLike, n: int = 256) -> Polyline2D:
    """The delta unit circle at z: the parabola v2 = beta - v1^2 / (4 beta),
    focus 0, vertex i beta.  Sampled for v1 in [-4 beta, 4 beta]."""
    _check_n(n, 2)
    beta = as_point(z).im
    v1 = np.linspace(-4.0 * beta, 4.0 * beta, n)
    return Polyline2D(np.column_stack([v1, beta - v1 * v1 / (4.0 * beta)]), closed=False)


def ellipse_foci(p: float, z: PointLike) -> tuple[tuple[float, float], tuple[float, float]]:
    p = check_p(p)
    if p == 0.0:
        raise DegenerateParabola("p = 0 gives a parabola; use unit_circle_delta")
    beta = as_point(z).im
    return (0.0, 0.0), (0.0, -4.0 * beta * (1.0 - p) / (p * (2.0 - p)))


def unit_circle_delta_p(p: float, z: PointLike, n: int = 256) -> Polyline2D:
    """The delta_p unit circle at z for 0 < p <= 1.

    An ellipse with one focus at the origin; in polar form about that focus
    r(theta) = 2 beta / (1 + (1 - p) sin theta).  Samples start at the bottom
    (theta = -pi/2) and are uniform in theta.
    """
    p = check_p(p)
    if p == 0.0:
        raise DegenerateParabola("p = 0 gives a parabola; use unit_circle_delta")
    _check_n(n, 3)
    beta = as_point(z).im
    theta = -math.pi / 2.0 + 2.0 * math.pi * np.arange(n) / n
    r = 2.0 * beta / (1.0 + (1.0 - p) * np.sin(theta))
    return Polyline2D(np.column_stack([r * np.cos(theta), r * np.sin(theta)]), closed=True)


def forward_ball_boundary(z: PointLike, r: float, n: int = 256) -> Polyline2D:
    """The forward sphere {w : delta(z, w) = r}.

    It is the part in the half-plane of the ellipse with foci z and conj(z)
    and focal distance sum 2 Im(z) e^r.  Sampled uniformly in the polar angle
    about the focus z, measured from the upward direction, starting at the
    bottom.  The lower part of the ellipse is always clipped, so the result is
    an open polyline running from one side of the real axis round to the other.
    """
    if not r > 0:
        raise InvalidParameter(f"radius must be positive, got {r}")
    _check_n(n, 3)
    z = as_point(z)
    semi_major = z.im * math.exp(r)
    ecc = math.exp(-r)  # focal half-distance Im z over semi-major axis
    semi_latus = semi_major * (1.0 - ecc) * (1.0 + ecc)
    psi = -math.pi + 2.0 * math.pi * np.arange(n) / n
    rho = semi_latus / (1.0 + ecc * np.cos(psi))
    u = z.re + rho * np.sin(psi)
    v = z.im + rho * np.cos(psi)
    keep = v > 0
    return Polyline2D(np.column_stack([u[keep], v[keep]]), closed=bool(keep.all()))


def _ray_point(z: HalfPlanePoint, direction: float, s: float) -> HalfPlanePoint:
    """Point at curvature -4 hyperbolic distance s from z along the geodesic
    leaving z in the Euclidean direction angle ``direction``."""
    cos_d, sin_d = math.cos(direction), math.sin(direction)
    if abs(cos_d) < 1e-12:
        return HalfPlanePoint(z.re, z.im * math.exp(2.0 * s * math.copysign(1.0, sin_d)))
    # the geodesic is the semicircle centred on the real axis orthogonal to the direction
    center = z.re + z.im * sin_d / cos_d
    radius = z.im / abs(cos_d)
    phi0 = math.atan2(z.im, z.re - center)
    # moving along the direction increases phi iff it has a positive component along i e^{i phi0}
    sign = 1.0 if (-math.sin(phi0) * cos_d + math.cos(phi0) * sin_d) > 0 else -1.0
    phi = 2.0 * math.atan(math.tan(phi0 / 2.0) * math.exp(2.0 * sign * s))
    return HalfPlanePoint(center + radius * math.cos(phi), radius * math.sin(phi))


def backward_sphere_point(
    z: PointLike,
    r: float,
    direction: float,
    cap: float = BACKWARD_SEARCH_CAP,
    tol: float = 1e-12,
) -> HalfPlanePoint:
    """The point w on the ray from z in the given direction with delta(w, z) = r.

    delta(w, z) is nondecreasing along the ray (w, then z, lie on one
    geodesic), so bisection on the distance s from z finds it.  Raises
    RootNotBracketed when delta(., z) stays below r out to distance ``cap``.
    """
    z = as_point(z)
    if delta(_ray_point(z, direction, cap), z) < r:
        raise RootNotBracketed(f"delta(., z) < {r} up to distance {cap} in direction {direction}")
    lo, hi = 0.0, cap
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if delta(_ray_point(z, direction, mid), z) < r:
            lo = mid
        else:
            hi = mid
    return _ray_point(z, direction, 0.5 * (lo + hi))


def backward_ball_boundary(z: PointLike, r: float, n: int = 256, cap: float = BACKWARD_SEARCH_CAP) -> Polyline2D:
    """The backward sphere {w : delta(w, z) = r}, one point per direction.

    Directions are uniform in angle starting straight down.  Directions in
    which delta(., z) never reaches r (straight up, where it stays 0) are
    clipped and the polyline is then open.
    """
    if not r > 0:
        raise InvalidParameter(f"radius must be positive, got {r}")
    _check_n(n, 3)
    z = as_point(z)
    pts, clipped = [], []
    for k in range(n):
        direction = -math.pi / 2.0 + 2.0 * math.pi * k / n
        try:
            w = backward_sphere_point(z, r, direction, cap)
        except RootNotBracketed:
            clipped.append(k)
            continue
        pts.append((w.re, w.im))
    if clipped:
        # rotate so the kept points form one contiguous run
        first_kept = (clipped[-1] + 1) % n
        order = [k for k in range(n) if k not in clipped]
        order = sorted(order, key=lambda k: (k - first_kept) % n)
        by_k = dict(zip([k for k in range(n) if k not in clipped], pts))
        pts = [by_k[k] for k in order]
    return Polyline2D(np.array(pts), closed=not clipped)
