"""The weak metric delta on the half-plane and its interpolating family.

delta(z1, z2) is the log of the supremum over slopes x of |z2 - x| / |z1 - x|,
the flat-torus analogue of Thurston's asymmetric metric.  delta_p adds p times
a difference of Busemann functions and runs from delta (p = 0) to the
hyperbolic distance (p = 1).
"""
from __future__ import annotations

import math

from .errors import CoincidentPoints, InvalidParameter
from .halfplane import (
    INFINITY,
    PointLike,
    HalfPlanePoint,
    Semicircle,
    as_point,
    geodesic_through,
)
from .oracle import OracleConfig, SupResult, compactified_sup

#: Relative gap |Re z2 - Re z1| / max(Im) below which a pair is treated as vertical.
VERTICAL_TOL = 1e-12


def check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"interpolation parameter must be in [0, 1], got {p}")
    return p


def delta(z1: PointLike, z2: PointLike) -> float:
    """log((|z2 - conj z1| + |z2 - z1|) / |z1 - conj z1|)."""
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        return 0.0
    dx = z2.re - z1.re
    rise = z2.im - z1.im
    far = math.hypot(dx, z2.im + z1.im)
    near = math.hypot(dx, rise)
    # far + near - 2 Im z1 as a sum of nonnegative terms: no cancellation, and
    # exactly 0 on the descending vertical ray
    dx2 = dx * dx
    excess = dx2 / (far + z1.im + z2.im) + dx2 / (near + abs(rise)) if dx else 0.0
    excess += 2.0 * max(rise, 0.0)
    return math.log1p(excess / (2.0 * z1.im))


def ratio_at(z1: PointLike, z2: PointLike, x: float) -> float:
    """|z2 - x| / |z1 - x|, with value 1 at x = oo."""
    if math.isinf(x):
        return 1.0
    z1, z2 = as_point(z1), as_point(z2)
    return math.hypot(z2.re - x, z2.im) / math.hypot(z1.re - x, z1.im)


#: The geodesic's (centre, radius) frame is used for the oracle only while
#: radius <= FRAME_CONDITION * min(Im z1, Im z2); beyond that, rounding in
#: centre + radius * tan(theta) swamps the width of the peak.
FRAME_CONDITION = 1e6


def search_frame(z1: HalfPlanePoint, z2: HalfPlanePoint) -> tuple[float, float]:
    """Centre (relative to Re z1) and scale for the compactified search."""
    g = geodesic_through(z1, z2)
    if isinstance(g, Semicircle) and g.radius <= FRAME_CONDITION * min(z1.im, z2.im):
        return g.center - z1.re, g.radius
    return 0.0, math.sqrt(z1.im * z2.im)


def delta_oracle(z1: PointLike, z2: PointLike, cfg: OracleConfig = OracleConfig()) -> SupResult:
    """Brute-force delta: grid search plus golden section over the slope x.

    The search runs on |z2 - x|^2 / |z1 - x|^2 - 1, written without
    cancellation as (A + B x) / (x^2 + b^2) in coordinates where Re z1 = 0,
    so nearly flat suprema are still located to full precision.
    """
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    b, beta = z1.im, z2.im
    d = z2.re - z1.re
    const = d * d + (beta - b) * (beta + b)
    slope = -2.0 * d

    def excess(x):  # x measured from Re z1
        return (const + slope * x) / (x * x + b * b)

    center, scale = search_frame(z1, z2)
    best, argmax, attained = compactified_sup(excess, 0.0, center, scale, cfg)
    return SupResult(0.5 * math.log1p(best), z1.re + argmax, attained)


def extremal_slopes(z1: PointLike, z2: PointLike) -> tuple[float, float]:
    """(x_+, x_-): the slope maximising |z2 - x| / |z1 - x| and the opposite endpoint.

    Both are endpoints of the hyperbolic geodesic through z1 and z2, x_+ on
    the side of z1.
    """
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    a, b, alpha, beta = z1.re, z1.im, z2.re, z2.im
    d = alpha - a
    if abs(d) < VERTICAL_TOL * max(b, beta) and beta != b:
        return (a, INFINITY) if beta > b else (INFINITY, a)
    # translate z1 to the imaginary axis and mirror so that z2 is to the right
    sign = 1.0 if d > 0 else -1.0
    d = abs(d)
    mid = (d * d + (beta - b) * (beta + b)) / (2.0 * d)
    half_width = math.hypot(d, beta - b) * math.hypot(d, beta + b) / (2.0 * d)
    # the roots multiply to -b^2; take the larger from the formula
    if mid >= 0:
        x_minus = mid + half_width
        x_plus = -b * b / x_minus
    else:
        x_plus = mid - half_width
        x_minus = -b * b / x_plus
    return a + sign * x_plus, a + sign * x_minus


def delta_p(p: float, z1: PointLike, z2: PointLike) -> float:
    """delta plus p/2 log(Im z1 / Im z2); p = 1 gives the hyperbolic distance."""
    p = check_p(p)
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        return 0.0
    return 0.5 * p * math.log(z1.im / z2.im) + delta(z1, z2)


def symmetrize(z1: PointLike, z2: PointLike) -> float:
    return 0.5 * (delta(z1, z2) + delta(z2, z1))


__all__ = [
    "OracleConfig",
    "SupResult",
    "check_p",
    "delta",
    "delta_oracle",
    "delta_p",
    "extremal_slopes",
    "ratio_at",
    "symmetrize",
]
