import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import params, points, random_points
from torus_thurston.errors import CoincidentPoints, DiscontinuousPath, InvalidParameter
from torus_thurston.finsler import (
    GeodesicArc,
    PiecewisePath,
    Polyline,
    QuadratureConfig,
    geodesic_length_closed_form,
    norm_delta,
    norm_delta_p,
    path_length,
)
from torus_thurston.halfplane import TangentVector, geodesic_arc_param, geodesic_through, hyp_dist
from torus_thurston.thurston import delta, delta_p

PHI = (1 + math.sqrt(5)) / 2
vectors = st.tuples(st.floats(-100, 100), st.floats(-100, 100))


def tv(base, v):
    return TangentVector(base, v.real, v.imag)


def test_norm_delta_examples():
    assert norm_delta(tv(1j, 1j)) == 1.0
    assert norm_delta(tv(1j, -1j)) == 0.0
    assert norm_delta(tv(1j, 1)) == 0.5


def test_norm_delta_p_examples():
    assert norm_delta_p(1, tv(1j, -1j)) == 0.5
    assert norm_delta_p(0.5, tv(1j, 1j)) == 0.75
    assert norm_delta_p(0.3, tv(2 + 5j, 0)) == 0.0


@given(points, vectors)
def test_norm_delta_zero_iff_straight_down(z, v):
    n = norm_delta(TangentVector(z, *v))
    assert n >= 0
    if v[0] == 0 and v[1] <= 0:
        assert n == 0
    elif abs(v[0]) > 1e-100:
        assert n > 0


@given(points, vectors, vectors, params, st.floats(1e-3, 1e3))
def test_norm_homogeneous_and_subadditive(z, v, w, p, c):
    nv, nw = norm_delta_p(p, TangentVector(z, *v)), norm_delta_p(p, TangentVector(z, *w))
    nvw = norm_delta_p(p, TangentVector(z, v[0] + w[0], v[1] + w[1]))
    scale = max(1.0, nv + nw)
    assert nvw <= nv + nw + 1e-12 * scale
    assert norm_delta_p(p, TangentVector(z, c * v[0], c * v[1])) == pytest.approx(c * nv, rel=1e-12, abs=1e-300)


@given(points, vectors, params)
def test_norm_ratio_bounds(z, v, p):
    # p |v|_1 <= |v|_p <= (2 - p) |v|_1
    n1 = norm_delta_p(1.0, TangentVector(z, *v))
    n = norm_delta_p(p, TangentVector(z, *v))
    assert p * n1 - 1e-14 * n1 <= n <= (2 - p) * n1 + 1e-14 * n1


@given(points, vectors)
def test_norm_endpoints_of_family(z, v):
    t = TangentVector(z, *v)
    assert norm_delta_p(0, t) == norm_delta(t)
    assert norm_delta_p(1, t) == pytest.approx(math.hypot(*v) / (2 * z.im), rel=1e-15)


def test_path_length_examples():
    assert path_length(0, GeodesicArc(1j, 2j)) == pytest.approx(math.log(2), abs=1e-12)
    assert path_length(0, GeodesicArc(2j, 1j)) == 0.0
    chord = path_length(0, Polyline((1j, 1 + 1j)))
    assert chord == pytest.approx(0.5, abs=1e-12)  # horizontal: |v| / (2 y)
    assert chord >= math.log(PHI)


def test_paths_are_directed():
    up = PiecewisePath.of(Polyline((1j, 1 + 2j)), GeodesicArc(1 + 2j, 3 + 4j))
    down = PiecewisePath.of(GeodesicArc(3 + 4j, 1 + 2j), Polyline((1 + 2j, 1j)))
    assert path_length(1, up) == pytest.approx(path_length(1, down), abs=1e-10)
    # the asymmetric part of the norm is (1 - p) d(log y) / 2, so the two
    # directions differ by exactly (1 - p) log(4)
    for p in (0.0, 0.5):
        gap = path_length(p, up) - path_length(p, down)
        assert gap == pytest.approx((1 - p) * math.log(4), abs=1e-10)


def test_discontinuous_path_rejected():
    with pytest.raises(DiscontinuousPath):
        PiecewisePath.of(Polyline((1j, 2j)), Polyline((2j + 1e-6, 3j)))
    with pytest.raises(InvalidParameter):
        PiecewisePath(())
    with pytest.raises(InvalidParameter):
        Polyline((1j,))
    with pytest.raises(InvalidParameter):
        QuadratureConfig(subdivisions=1)


def test_closed_form_examples():
    assert geodesic_length_closed_form(0, 1j, 1 + 1j) == pytest.approx(math.log(PHI), abs=1e-15)
    assert geodesic_length_closed_form(0, 1j, 2j) == pytest.approx(math.log(2), abs=1e-15)
    assert geodesic_length_closed_form(1, 1j, 2j) == pytest.approx(0.5 * math.log(2), abs=1e-15)
    with pytest.raises(CoincidentPoints):
        geodesic_length_closed_form(0, 1j, 1j)


@given(points, points, params)
def test_quadrature_matches_closed_form(z1, z2, p):
    assume(z1 != z2)
    got = path_length(p, GeodesicArc(z1, z2))
    want = geodesic_length_closed_form(p, z1, z2)
    assert got == pytest.approx(want, abs=10 * 1e-10 * (1 + abs(want)))


@given(points, points, params)
def test_reparametrisation_invariance(z1, z2, p):
    # splitting the arc at an interior point is a reparametrisation
    assume(z1 != z2)
    g = geodesic_through(z1, z2)
    w = geodesic_arc_param(g, z1, z2, 0.37)
    split = PiecewisePath.of(GeodesicArc(z1, w, g), GeodesicArc(w, z2, g))
    assert path_length(p, split) == pytest.approx(path_length(p, GeodesicArc(z1, z2)), abs=1e-9)


def test_polyline_refinement_converges_to_geodesic():
    z1, z2 = 1j, 3 + 2j
    g = geodesic_through(z1, z2)
    lengths = [path_length(0, Polyline(tuple(geodesic_arc_param(g, z1, z2, k / n) for k in range(n + 1)))) for n in (4, 16, 64)]
    errs = [L - delta(z1, z2) for L in lengths]
    assert all(e >= -1e-12 for e in errs)
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3


def test_limit_consistency_is_linear_in_t(rng):
    for z, v, p in zip(random_points(rng, 200), rng.normal(size=(200, 2)), rng.uniform(0, 1, 200)):
        norm = norm_delta_p(p, TangentVector(z, *(v * z.im)))
        errs = []
        for t in (1e-3, 1e-4, 1e-5):
            w = z.z + t * complex(*v) * z.im
            errs.append(abs(delta_p(p, z, w) / t - norm))
        assert errs[2] < 1e-3
        # first-order convergence: the error shrinks roughly tenfold per step
        assert errs[1] <= 0.2 * errs[0] + 1e-9 and errs[2] <= 0.2 * errs[1] + 1e-9


def test_minimality_on_perturbed_polylines(rng):
    pts = random_points(rng, 200)
    for z1, z2 in zip(pts[::2], pts[1::2]):
        p = float(rng.choice([0.0, 0.5, 1.0]))
        target = delta_p(p, z1, z2)
        assert path_length(p, GeodesicArc(z1, z2)) == pytest.approx(target, abs=1e-8)
        g = geodesic_through(z1, z2)
        for _ in range(3):
            ts = np.sort(rng.uniform(0, 1, 3))
            verts = [z1.z]
            for t in ts:
                w = geodesic_arc_param(g, z1, z2, float(t)).z
                verts.append(complex(w.real + rng.normal(0, 0.1), w.imag * math.exp(rng.normal(0, 0.1))))
            verts.append(z2.z)
            assert path_length(p, Polyline(tuple(verts))) >= target - 1e-8
