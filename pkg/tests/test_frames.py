import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from croftonlab import curvature as cc
from croftonlab.body import Polygon, TrigCurve, random_convex_body, wrap_angle
from croftonlab.errors import GeometryError
from croftonlab.frames import (arclength_perimeter, boundary_frame, ideal_psi, support_frames,
                               support_line_at_omega, support_lines_from_ideal, tangent_frames)
from croftonlab.quadrature import central_diff

TANH1 = math.tanh(1.0)


def test_euclidean_circle_frame():
    circle = TrigCurve.circle((0, 0), 2.0)
    for t in (0.0, 1.0, 4.0):
        fr = boundary_frame(circle, 0.0, t)
        assert fr.rho == pytest.approx(2.0)
        assert fr.alpha == pytest.approx(0.0, abs=1e-14)
        assert fr.kappa_g == pytest.approx(0.5)


def test_hyperbolic_circle_frame():
    fr = boundary_frame(TrigCurve.circle((0, 0), TANH1), -1.0, 0.7)
    assert fr.rho == pytest.approx(1.0, abs=1e-14)
    assert fr.kappa_g == pytest.approx(1 / math.tanh(1.0), rel=1e-13)


def test_offset_circle_normal_points_at_origin():
    fr = boundary_frame(TrigCurve.circle((3, 0), 1.0), 0.0, math.pi)
    assert fr.rho == pytest.approx(2.0)
    assert abs(wrap_angle(fr.alpha - math.pi)) < 1e-12


def test_frame_at_origin_is_pole():
    body = TrigCurve.circle((0.5, 0), 0.5)
    with pytest.raises(GeometryError) as exc:
        boundary_frame(body, 0.0, math.pi)
    assert exc.value.code == "NEAR_POLE"


def test_polygon_vertex_frame_rejected():
    with pytest.raises(GeometryError) as exc:
        boundary_frame(Polygon([[-1, -1], [1, -1], [0, 1]]), 0.0, 1.0)
    assert exc.value.code == "VERTEX"


def test_support_line_examples():
    s = support_line_at_omega(TrigCurve.circle((0, 0), 0.5), 0.0, 0.0)
    assert np.allclose(s.contact, [0.5, 0.0], atol=1e-12)
    assert s.line.offset == pytest.approx(0.5)
    assert s.frame.r == pytest.approx(0.5)
    for om in (0.0, 1.3, 4.0):
        assert support_line_at_omega(TrigCurve.circle((0, 0), TANH1), -1.0, om).frame.r == pytest.approx(1.0)
    sq = Polygon([[-1, -1], [1, -1], [1, 1], [-1, 1]])
    s = support_line_at_omega(sq, 0.0, math.pi / 4)
    assert np.allclose(s.contact, [1, 1])
    assert s.frame.r == pytest.approx(math.sqrt(2))


def test_ideal_support_circle():
    body = TrigCurve.circle((0, 0), TANH1)
    for phi in (0.0, 2.0, 5.0):
        s = support_lines_from_ideal(body, -1.0, phi)
        psi1 = math.pi / 2 - math.asin(TANH1)
        assert s.psi1 == pytest.approx(psi1, abs=1e-10)
        assert s.psi2 == pytest.approx(math.pi - psi1, abs=1e-10)
        assert s.w == pytest.approx(2 * math.sinh(1.0), rel=1e-10)


def test_ideal_support_point_bodies():
    s = support_lines_from_ideal(Polygon([[0.0, 0.0]]), -1.0, 0.3)
    assert s.psi1 == pytest.approx(math.pi / 2)
    assert s.psi2 == pytest.approx(math.pi / 2)
    assert s.w == pytest.approx(0.0, abs=1e-15)
    # R = (0, 1) and the reference direction is -x, so (0.5, 0) sits past the vertical
    s = support_lines_from_ideal(Polygon([[0.5, 0.0]]), -1.0, math.pi / 2)
    assert math.tan(s.psi1) == pytest.approx(-2.0)
    assert s.h == pytest.approx(-0.5)
    s = support_lines_from_ideal(Polygon([[-0.5, 0.0]]), -1.0, math.pi / 2)
    assert s.h == pytest.approx(0.5)


def test_ideal_needs_hyperbolic():
    with pytest.raises(GeometryError) as exc:
        ideal_psi(TrigCurve.circle((0, 0), 0.3), 0.0, 0.0)
    assert exc.value.code == "DOMAIN"


@pytest.mark.parametrize("body, k, expected", [
    (TrigCurve.circle((0, 0), 1.0), 0.0, 2 * math.pi),
    (TrigCurve.circle((0, 0), TANH1), -1.0, 2 * math.pi * math.sinh(1.0)),
    (Polygon([[-1, -1], [1, -1], [1, 1], [-1, 1]]), 0.0, 8.0),
])
def test_arclength_perimeter(body, k, expected):
    assert arclength_perimeter(body, k) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("k", [-1.0, 0.0, 1.0])
def test_frame_derivatives_match_finite_differences(k):
    # d rho/ds = -sin(alpha) and d theta/ds = cos(alpha)/ell(rho)
    body = random_convex_body(np.random.default_rng(11), k)
    t = np.linspace(0, 2 * math.pi, 40, endpoint=False)
    fr = tangent_frames(body, k, t)
    h = 1e-4
    drho = central_diff(lambda u: tangent_frames(body, k, u).rho, t, h) / fr.speed
    th = fr.theta
    dth = central_diff(lambda u: th + wrap_angle(tangent_frames(body, k, u).theta - th), t, h) / fr.speed
    assert np.allclose(drho, -np.sin(fr.alpha), atol=1e-8)
    assert np.allclose(dth, np.cos(fr.alpha) / cc.ell(k, fr.rho), atol=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([-1.0, 0.0, 1.0]))
def test_support_frame_bundle(seed, k):
    body = random_convex_body(np.random.default_rng(seed), k)
    fr = support_frames(body, k, np.linspace(0, 2 * math.pi, 64, endpoint=False))
    ell = lambda x: cc.ell(k, x)  # noqa: E731
    assert np.allclose(ell(fr.r), ell(fr.rho) * np.cos(fr.alpha), atol=1e-10)
    assert np.allclose(np.sin(fr.omega - fr.theta) * ell(fr.rho), ell(fr.x), atol=1e-10)
    assert np.allclose(wrap_angle(fr.beta - (math.pi / 2 - fr.alpha)), 0.0, atol=1e-12)
    if k < 0:
        assert np.allclose(wrap_angle(fr.omega - 0.5 * (fr.phi + fr.phi_tilde)), 0.0, atol=1e-10)
        par = cc.angle_of_parallelism(k, np.abs(fr.r))
        assert np.allclose(np.abs(wrap_angle(fr.omega - fr.phi)), np.where(fr.r >= 0, par, math.pi - par),
                           atol=1e-10)
