"""Randomised invariant checks behind ``torus-thurston selftest``.

Sample i draws from its own generator seeded with ``seed ^ i``, so any
sample can be replayed alone and the result does not depend on ordering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .finsler import GeodesicArc, Polyline, QuadratureConfig, geodesic_length_closed_form, norm_delta_p, path_length
from .halfplane import HalfPlanePoint, TangentVector, apply_similarity, geodesic_arc_param, hyp_dist, mirror
from .oracle import OracleConfig
from .shapes import backward_ball_boundary, ellipse_foci, forward_ball_boundary, unit_circle_delta, unit_circle_delta_p
from .thurston import delta, delta_oracle, delta_p, extremal_slopes, symmetrize
from .torus import kappa_sup, kerckhoff_delta1

PS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass
class Check:
    name: str
    tol: float
    max_error: float = 0.0
    samples: int = 0
    failures: int = 0

    def record(self, err: float):
        self.samples += 1
        if not err <= self.tol:  # NaN counts as a failure
            self.failures += 1
        if not err <= self.max_error:
            self.max_error = err

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "max_error": self.max_error,
            "tol": self.tol,
            "passed": self.passed,
        }


def random_point(rng: np.random.Generator) -> HalfPlanePoint:
    return HalfPlanePoint(float(rng.uniform(-10.0, 10.0)), float(rng.uniform(1e-2, 10.0)))


@dataclass
class Suite:
    oracle_cfg: OracleConfig = OracleConfig()
    quad_cfg: QuadratureConfig = QuadratureConfig()
    checks: dict = field(default_factory=dict)

    def check(self, name: str, tol: float) -> Check:
        if name not in self.checks:
            self.checks[name] = Check(name, tol)
        return self.checks[name]

    def run_sample(self, rng: np.random.Generator):
        z1, z2 = random_point(rng), random_point(rng)
        if z1 == z2:
            return
        d12, d21 = delta(z1, z2), delta(z2, z1)

        orc = delta_oracle(z1, z2, self.oracle_cfg)
        self.check("oracle_value", 1e-9).record(abs(orc.value - d12))
        if orc.attained:
            x_plus = extremal_slopes(z1, z2)[0]
            self.check("oracle_argmax", 1e-6).record(abs(orc.argmax - x_plus) / (1.0 + abs(x_plus)))

        self.check("asymmetry", 1e-12).record(abs(d21 - d12 - math.log(z1.im / z2.im)))
        self.check("symmetrisation", 1e-12).record(abs(symmetrize(z1, z2) - hyp_dist(z1, z2)))
        z3 = random_point(rng)
        self.check("triangle", 1e-12).record(max(0.0, delta(z1, z3) - d12 - delta(z2, z3)))

        # additivity at a random point of the arc
        arc = GeodesicArc(z1, z2)
        w = geodesic_arc_param(arc.geodesic, z1, z2, float(rng.uniform(0.05, 0.95)))
        for p in PS:
            err = abs(delta_p(p, z1, w) + delta_p(p, w, z2) - delta_p(p, z1, z2))
            self.check("additivity", 1e-10).record(err)

        p = float(rng.choice(PS))
        target = delta_p(p, z1, z2)
        self.check("geodesic_quadrature", 1e-8).record(abs(path_length(p, arc, self.quad_cfg) - target))
        if z1.re != z2.re:
            self.check("theta_closed_form", 1e-12).record(abs(geodesic_length_closed_form(p, z1, z2) - target))
        mid = complex(0.5 * (z1.re + z2.re) + rng.normal(0, 1), 0.5 * (z1.im + z2.im) * math.exp(rng.normal(0, 0.5)))
        if mid.imag > 0:
            excess = target - path_length(p, Polyline((z1, mid, z2)), self.quad_cfg)
            self.check("polyline_not_shorter", 1e-8).record(max(0.0, excess))

        # infinitesimal limit of the weak norm
        v = complex(*rng.normal(size=2)) * z1.im
        t = 1e-5
        tip = z1.z + t * v
        if tip.imag > 0:
            quotient = delta_p(p, z1, tip) / t
            self.check("infinitesimal", 1e-3).record(abs(quotient - norm_delta_p(p, TangentVector(z1, v.real, v.imag))))

        # isometries
        lam, tau = float(math.exp(rng.uniform(-2, 2))), float(rng.uniform(-5, 5))
        for q in (0.0, p):
            base = delta_p(q, z1, z2)
            moved = delta_p(q, apply_similarity(lam, tau, z1), apply_similarity(lam, tau, z2))
            flipped = delta_p(q, mirror(z1), mirror(z2))
            scale = max(1.0, abs(base))
            self.check("isometry", 1e-12).record(max(abs(moved - base), abs(flipped - base)) / scale)

        self.check("kerckhoff", 1e-8).record(abs(kerckhoff_delta1(z1, z2, self.oracle_cfg) - delta_p(1.0, z1, z2)))
        self.check("kappa", 1e-6).record(abs(kappa_sup(z1, z2)[0] - d12))

        # conics and spheres around z1
        beta = z1.im
        pts = unit_circle_delta(z1, 64).points
        self.check("parabola", 1e-12).record(float(np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - (2 * beta - pts[:, 1])))) / beta)
        q = float(rng.uniform(0.05, 1.0))
        pts = unit_circle_delta_p(q, z1, 64).points
        (f1, f2) = ellipse_foci(q, z1)
        sums = np.hypot(pts[:, 0] - f1[0], pts[:, 1] - f1[1]) + np.hypot(pts[:, 0] - f2[0], pts[:, 1] - f2[1])
        self.check("ellipse", 1e-10).record(float(np.ptp(sums)) / beta)
        r = float(rng.choice((0.1, math.log(2.0), 2.0)))
        fwd = forward_ball_boundary(z1, r, 32).points
        self.check("forward_ball", 1e-9).record(max(abs(delta(z1, complex(*x)) - r) for x in fwd))
        bwd = backward_ball_boundary(z1, r, 32).points
        self.check("backward_ball", 1e-9).record(max(abs(delta(complex(*x), z1) - r) for x in bwd))


def run(seed: int, samples: int, oracle_cfg: OracleConfig = OracleConfig(), quad_cfg: QuadratureConfig = QuadratureConfig()) -> dict:
    suite = Suite(oracle_cfg, quad_cfg)
    for i in range(samples):
        suite.run_sample(np.random.default_rng(seed ^ i))
    checks = [c.as_dict() for c in suite.checks.values()]
    return {"passed": all(c["passed"] for c in checks), "checks": checks}
