"""Flat tori, simple closed curves and the length-ratio supremum.

The torus of modulus zeta is C / (Z + zeta Z).  The curve class p a + q b has
flat geodesic length |p + q zeta|, so the length ratio between two tori is
|zeta2 - x| / |zeta1 - x| at the boundary slope x = -p/q.  kappa, the log of
the supremal ratio over all classes, therefore coincides with delta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import CoincidentPoints, InfiniteSlopeUnsupported, InvalidParameter
from .halfplane import INFINITY, HalfPlanePoint, PointLike, as_point
from .oracle import OracleConfig, compactified_sup
from .thurston import search_frame, extremal_slopes

#: Denominators up to this bound are swept exhaustively by kappa_sup.
SWEEP_Q = 50
#: At most this many numerators either side of the peak per denominator.
SWEEP_WIDTH = 200


@dataclass(frozen=True)
class MarkedFlatTorus:
    modulus: HalfPlanePoint

    def __post_init__(self):
        object.__setattr__(self, "modulus", as_point(self.modulus))


@dataclass(frozen=True, order=True)
class CurveClass:
    """Primitive class p a + q b, normalised to q > 0 or (p, q) = (1, 0)."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if (p, q) == (0, 0) or math.gcd(p, q) != 1:
            raise InvalidParameter(f"({p}, {q}) is not a primitive class")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


def _torus(t) -> HalfPlanePoint:
    return t.modulus if isinstance(t, MarkedFlatTorus) else as_point(t)


def curve_length(t: MarkedFlatTorus, c: CurveClass) -> float:
    zeta = _torus(t)
    return math.hypot(c.p + c.q * zeta.re, c.q * zeta.im)


def class_slope(c: CurveClass) -> float:
    return INFINITY if c.q == 0 else -c.p / c.q


def _semiconvergents(x: Fraction, q_max: int) -> Iterator[tuple[int, int]]:
    """Convergents and semiconvergents h/k of x with 0 < k <= q_max."""
    h_prev, k_prev = 1, 0
    h, k = math.floor(x), 1
    yield h, k
    rest = x - math.floor(x)
    while rest:
        x = 1 / rest
        a = math.floor(x)
        rest = x - a
        for j in range(1, a + 1):
            hs, ks = h_prev + j * h, k_prev + j * k
            if ks > q_max:
                return
            yield hs, ks
        h_prev, k_prev, h, k = h, k, h_prev + a * h, k_prev + a * k


def _candidates(x_plus: float, scale: float, q_max: int) -> set[tuple[int, int]]:
    """Primitive (p, q) classes tried by kappa_sup; (1, 0) is always included."""
    found = {(1, 0)}
    if math.isinf(x_plus):
        return found
    # every class with q <= SWEEP_Q whose slope is within the peak window
    for q in range(1, min(q_max, SWEEP_Q) + 1):
        centre = -x_plus * q
        reach = min(scale * q, SWEEP_WIDTH)
        lo = math.floor(centre - reach) - 1
        hi = math.ceil(centre + reach) + 1
        for p in range(lo, hi + 1):
            if math.gcd(p, q) == 1:
                found.add((p, q))
    for h, k in _semiconvergents(Fraction(x_plus), q_max):
        found.add((-h, k))
    return found


def kappa_sup(z1: PointLike, z2: PointLike, q_max: int = 10_000) -> tuple[float, CurveClass]:
    """log of the largest length ratio l_2(c) / l_1(c) over classes with q <= q_max.

    Besides an exhaustive sweep of small denominators near the maximising
    slope, the continued-fraction convergents and semiconvergents of that
    slope are tried, since they are its best rational approximations.
    Ties are broken towards the lexicographically smallest (q, p).
    """
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    if q_max < 1:
        raise InvalidParameter(f"q_max must be at least 1, got {q_max}")
    x_plus, _ = extremal_slopes(z1, z2)
    if math.isinf(x_plus):
        scale = 0.0
    else:
        scale = 1.0 + abs(complex(z1.re - x_plus, z1.im))
    cand = sorted(_candidates(x_plus, scale, q_max), key=lambda pq: (pq[1], pq[0]))
    ps = np.array([c[0] for c in cand], dtype=float)
    qs = np.array([c[1] for c in cand], dtype=float)
    ratios = np.hypot(ps + qs * z2.re, qs * z2.im) / np.hypot(ps + qs * z1.re, qs * z1.im)
    i = int(np.argmax(ratios))
    return float(np.log(ratios[i])), CurveClass(*cand[i])


def extremal_length(z: PointLike, x: float) -> float:
    """|z - x|^2 / Im z, the extremal length of the slope-x foliation up to a
    factor depending only on x."""
    if math.isinf(x):
        raise InfiniteSlopeUnsupported("extremal length is only defined here for finite slopes")
    z = as_point(z)
    return ((z.re - x) ** 2 + z.im**2) / z.im


def kerckhoff_delta1(z1: PointLike, z2: PointLike, cfg: OracleConfig = OracleConfig()) -> float:
    """1/2 log sup_x Ext_{z2}(x) / Ext_{z1}(x), found by compactified search."""
    z1, z2 = as_point(z1), as_point(z2)
    if z1 == z2:
        raise CoincidentPoints(f"{z1} and {z2} coincide")
    a, b, alpha, beta = z1.re, z1.im, z2.re, z2.im

    def ext_ratio(x):  # x measured from Re z1
        return (((alpha - a) - x) ** 2 + beta * beta) / beta / ((x * x + b * b) / b)

    center, scale = search_frame(z1, z2)
    best, _, _ = compactified_sup(ext_ratio, b / beta, center, scale, cfg)
    return 0.5 * math.log(best)
