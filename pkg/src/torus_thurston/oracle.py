"""Brute-force supremum search over the extended real line.

The line R u {oo} is compactified as x = center + scale * tan(theta) with
theta in (-pi/2, pi/2); theta = +-pi/2 is the single point oo.  A uniform
theta grid locates the best cell, then golden-section search refines it.
Used as an independent check on the closed forms for the weak metric and
the extremal-length formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .halfplane import INFINITY

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# a maximum within this relative margin of the limit at oo is reported as that limit
_FLAT = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class OracleConfig:
    grid_size: int = 4096
    refine_tol: float = 1e-12

    def __post_init__(self):
        if self.grid_size < 8:
            raise ValueError(f"grid_size must be at least 8, got {self.grid_size}")
        if not self.refine_tol > 0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol}")


@dataclass(frozen=True)
class SupResult:
    value: float  # log of the supremum
    argmax: float  # boundary point; INFINITY when the sup is the limit at oo
    attained: bool


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float):
    """Maximise a unimodal f on [lo, hi] down to an interval of width tol.

    Returns (x, f(x)) for the best point evaluated.
    """
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    best = (c, fc) if fc >= fd else (d, fd)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
            if fc > best[1]:
                best = (c, fc)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
            if fd > best[1]:
                best = (d, fd)
    return best


def compactified_sup(
    objective: Callable,
    limit_at_infinity: float,
    center: float,
    scale: float,
    cfg: OracleConfig = OracleConfig(),
) -> tuple[float, float, bool]:
    """Supremum of a function over R u {oo}.

    ``objective`` must accept numpy arrays and floats; ``limit_at_infinity`` is
    its value at oo.  The function is assumed to have a single local maximum on
    the compactified circle, so the true maximiser lies within one grid cell
    of the best sample.

    Returns (sup, argmax, attained); argmax is INFINITY and attained False
    when nothing finite beats the limit at oo.
    """
    n = cfg.grid_size
    half_pi = math.pi / 2.0
    thetas = -half_pi + math.pi * (np.arange(n) + 0.5) / n
    values = objective(center + scale * np.tan(thetas))
    k = int(np.argmax(values))  # first maximum on ties: deterministic

    def on_theta(theta):
        return float(objective(center + scale * math.tan(theta)))

    if values[k] > limit_at_infinity:
        lo = thetas[k - 1] if k > 0 else -half_pi
        hi = thetas[k + 1] if k < n - 1 else half_pi
        theta, best = golden_section_max(on_theta, lo, hi, cfg.refine_tol)
        if values[k] > best:
            theta, best = thetas[k], float(values[k])
    else:
        # oo is the best sample; look for a finite maximiser just beside it
        theta, best = half_pi, limit_at_infinity
        for lo, hi in ((thetas[-1], half_pi), (-half_pi, thetas[0])):
            t, val = golden_section_max(on_theta, lo, hi, cfg.refine_tol)
            if val > best and abs(t) < half_pi:
                theta, best = t, val
    if best <= limit_at_infinity + _FLAT * abs(limit_at_infinity):
        return limit_at_infinity, INFINITY, False
    return best, center + scale * math.tan(theta), True
