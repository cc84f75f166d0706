import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import points, random_points
from torus_thurston.errors import DegenerateParabola, InvalidParameter, RootNotBracketed
from torus_thurston.finsler import norm_delta, norm_delta_p
from torus_thurston.halfplane import HalfPlanePoint, TangentVector, mirror
from torus_thurston.shapes import (
    Polyline2D,
    backward_ball_boundary,
    backward_sphere_point,
    ellipse_foci,
    forward_ball_boundary,
    unit_circle_delta,
    unit_circle_delta_p,
)
from torus_thurston.thurston import delta

open_p = st.floats(1e-3, 1.0)


def test_polyline2d_invariants():
    with pytest.raises(InvalidParameter):
        Polyline2D(np.array([[0.0, 1.0]]), closed=False)
    with pytest.raises(InvalidParameter):
        Polyline2D(np.array([[0.0, 1.0], [np.inf, 0.0]]), closed=False)


def test_parabola_examples():
    pts = unit_circle_delta(1j, 5).points  # v1 = -4, -2, 0, 2, 4
    assert tuple(pts[2]) == (0.0, 1.0)
    assert tuple(pts[3]) == (2.0, 0.0)
    assert tuple(unit_circle_delta(2j, 3).points[1]) == (0.0, 2.0)
    assert not unit_circle_delta(1j, 8).closed


@given(points)
def test_parabola_focus_directrix_and_unit_norm(z):
    pts = unit_circle_delta(z, 101).points
    beta = z.im
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - (2 * beta - pts[:, 1]))) <= 1e-12 * max(1.0, beta)
    for v1, v2 in pts:
        assert norm_delta(TangentVector(z, v1, v2)) == pytest.approx(1.0, abs=1e-12)


def test_ellipse_examples():
    pts = unit_circle_delta_p(1, 1j, 64).points
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 2.0)) <= 1e-12
    pts = unit_circle_delta_p(0.5, 1j, 4).points  # bottom, right, top, left
    assert pts[2] == pytest.approx([0.0, 4.0 / 3.0], abs=1e-15)
    assert pts[0] == pytest.approx([0.0, -4.0], abs=1e-15)
    assert unit_circle_delta_p(0.5, 1j, 4).closed
    with pytest.raises(DegenerateParabola):
        unit_circle_delta_p(0, 1j, 16)


def test_foci_examples():
    assert ellipse_foci(1, 1j) == ((0.0, 0.0), (0.0, 0.0))
    f1, f2 = ellipse_foci(0.3, 1j)
    assert f1 == (0.0, 0.0) and f2[1] == pytest.approx(-2.8 / 0.51, rel=1e-15)
    assert ellipse_foci(0.5, 2j)[1][1] == pytest.approx(-16 / 3, rel=1e-15)
    with pytest.raises(DegenerateParabola):
        ellipse_foci(0, 1j)


@given(points, open_p)
def test_ellipse_two_focus_sum_and_unit_norm(z, p):
    pts = unit_circle_delta_p(p, z, 97).points
    (f1, f2) = ellipse_foci(p, z)
    sums = np.hypot(pts[:, 0] - f1[0], pts[:, 1] - f1[1]) + np.hypot(pts[:, 0] - f2[0], pts[:, 1] - f2[1])
    expected = 2 * z.im / p + 2 * z.im / (2 - p)
    assert np.max(np.abs(sums - expected)) <= 1e-10 * max(1.0, expected)
    for v1, v2 in pts:
        assert norm_delta_p(p, TangentVector(z, v1, v2)) == pytest.approx(1.0, abs=1e-12)


def test_parabola_is_limit_of_ellipses():
    # on the vertex region, points of equal v1 approach each other as p -> 0
    z = HalfPlanePoint(0.0, 1.0)
    ell = unit_circle_delta_p(1e-4, z, 4096).points
    upper = ell[ell[:, 1] > -3.5]
    for v1, v2 in upper:
        if abs(v1) <= 3.0:
            assert v2 == pytest.approx(1.0 - v1 * v1 / 4.0, abs=1e-3)


def test_forward_ball_examples():
    pts = forward_ball_boundary(1j, math.log(2), 256).points
    top = pts[np.argmax(pts[:, 1])]
    assert top == pytest.approx([0.0, 2.0], abs=1e-12)
    # collapse towards the segment from i to the real axis
    small = forward_ball_boundary(1j, 1e-6, 256).points
    assert np.max(np.abs(small[:, 0])) < 3e-3 and np.max(small[:, 1]) < 1.0 + 1e-5
    ball = forward_ball_boundary(1j, 0.5, 64)
    assert not ball.closed and np.all(ball.points[:, 1] > 0)


@pytest.mark.parametrize("r", [0.1, math.log(2), 2.0])
def test_forward_ball_membership(rng, r):
    for z in random_points(rng, 10):
        for u, v in forward_ball_boundary(z, r, 256).points:
            assert abs(delta(z, complex(u, v)) - r) <= 1e-9


def test_backward_ball_examples():
    w = backward_sphere_point(2j, math.log(2), -math.pi / 2)
    assert w.re == pytest.approx(0.0, abs=1e-12) and w.im == pytest.approx(1.0, abs=1e-11)
    with pytest.raises(RootNotBracketed):
        backward_sphere_point(1j, 0.5, math.pi / 2)
    ball = backward_ball_boundary(1j, 0.5, 16)
    assert len(ball) == 15 and not ball.closed


def test_backward_ball_mirror_symmetry():
    z = HalfPlanePoint(0.7, 1.3)
    pts = backward_ball_boundary(z, 0.8, 64).points
    mirrored = backward_ball_boundary(mirror(z), 0.8, 64).points
    as_set = {(round(-u, 9), round(v, 9)) for u, v in pts}
    assert {(round(u, 9), round(v, 9)) for u, v in mirrored} == as_set


@pytest.mark.parametrize("r", [0.1, math.log(2), 2.0])
def test_backward_ball_membership(rng, r):
    for z in random_points(rng, 5):
        for u, v in backward_ball_boundary(z, r, 128).points:
            assert abs(delta(complex(u, v), z) - r) <= 1e-9


def test_ball_rejects_bad_input():
    for fn in (forward_ball_boundary, backward_ball_boundary):
        with pytest.raises(InvalidParameter):
            fn(1j, 0.0, 16)
        with pytest.raises(InvalidParameter):
            fn(1j, 1.0, 2)
