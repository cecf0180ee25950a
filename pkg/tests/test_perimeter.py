import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from croftonlab import curvature as cc
from croftonlab.body import Polygon, TrigCurve, random_convex_body, wrap_angle
from croftonlab.errors import GeometryError
from croftonlab.frames import arclength_perimeter, support_frames, support_lines_from_ideal, tangent_frames
from croftonlab.models import chart_distance, hyperbolic_distance_klein
from croftonlab.perimeter import (applicable_methods, arc_integrals, cauchy_perimeter_unified, cauchy_polar,
                                  cauchy_polar_integrands, dr_domega, kappa_from_omega, measure_oracles,
                                  measure_ratios, minkowski_integrand, minkowski_perimeter, perimeter,
                                  projective_cauchy_h, projective_cauchy_w)
from croftonlab.quadrature import central_diff

SINH1 = math.sinh(1.0)
H_CIRCLE = TrigCurve.circle((0, 0), math.tanh(1.0))


def polygon_side_sum(k, verts):
    v = np.asarray(verts, dtype=float)
    return float(np.sum(chart_distance(k, v, np.roll(v, -1, axis=0))))


def test_minkowski_examples():
    assert minkowski_perimeter(0.0, TrigCurve.circle((3, 0), 2.0)).value == pytest.approx(4 * math.pi, rel=1e-12)
    assert minkowski_perimeter(-1.0, H_CIRCLE).value == pytest.approx(2 * math.pi * SINH1, rel=1e-12)
    s_circle = TrigCurve.circle((0, 0), math.tan(math.pi / 6))
    assert minkowski_perimeter(1.0, s_circle).value == pytest.approx(math.pi, rel=1e-12)


def test_minkowski_hand_terms():
    # both integrand pieces for the unit hyperbolic circle
    t = np.linspace(0, 2 * math.pi, 8, endpoint=False)
    fr = tangent_frames(H_CIRCLE, -1.0, t)
    total = minkowski_integrand(-1.0, H_CIRCLE, t) / fr.speed * SINH1
    assert np.allclose(total, SINH1 ** 2 / math.tanh(1.0) - (math.cosh(1.0) - 1) * SINH1)


@pytest.mark.parametrize("k, verts", [
    (0.0, [[-1, -1], [1, -1], [1, 1], [-1, 1]]),
    (-1.0, [[0.3, 0], [0, 0.4], [-0.2, -0.2]]),
    (1.0, [[-0.2, -0.2], [0.2, -0.2], [0.2, 0.2], [-0.2, 0.2]]),
])
def test_minkowski_polygon(k, verts):
    rep = minkowski_perimeter(k, Polygon(verts))
    assert rep.value == pytest.approx(polygon_side_sum(k, verts), abs=1e-8)


def test_minkowski_triangle_sides_in_klein():
    verts = np.array([[0.3, 0], [0, 0.4], [-0.2, -0.2]])
    ref = sum(hyperbolic_distance_klein(verts[i], verts[(i + 1) % 3]) for i in range(3))
    assert minkowski_perimeter(-1.0, Polygon(verts)).value == pytest.approx(ref, abs=1e-8)


def test_cauchy_unified_examples():
    assert cauchy_perimeter_unified(0.0, TrigCurve.circle((0, 0), 1.0)).value == pytest.approx(2 * math.pi)
    assert cauchy_perimeter_unified(-1.0, H_CIRCLE).value == pytest.approx(2 * math.pi * SINH1, rel=1e-12)
    far = TrigCurve.circle((5, 0), 1.0)
    fr = support_frames(far, 0.0, np.array([math.pi]))
    assert fr.r[0] < 0
    assert cauchy_perimeter_unified(0.0, far).value == pytest.approx(2 * math.pi, rel=1e-12)


def test_projective_examples():
    assert projective_cauchy_w(H_CIRCLE).value == pytest.approx(2 * math.pi * SINH1, rel=1e-10)
    assert projective_cauchy_h(H_CIRCLE).value == pytest.approx(2 * math.pi * SINH1, rel=1e-10)
    point = Polygon([[0.0, 0.0]])
    assert projective_cauchy_w(point).value == pytest.approx(0.0, abs=1e-14)
    assert projective_cauchy_h(point).value == pytest.approx(0.0, abs=1e-14)
    a = 0.4
    seg = Polygon([[0, -a], [0, a]])
    two_gon = 2 * hyperbolic_distance_klein(np.array([0, -a]), np.array([0, a]))
    assert projective_cauchy_w(seg).value == pytest.approx(two_gon, rel=1e-9)


def test_projective_h_off_centre():
    # the origin lies outside, so h changes sign
    body = TrigCurve.circle((0.5, 0.1), 0.2)
    h = [support_lines_from_ideal(body, -1.0, phi).h for phi in np.linspace(0, 2 * math.pi, 64)]
    assert min(h) < 0 < max(h)
    assert projective_cauchy_h(body).value == pytest.approx(arclength_perimeter(body, -1.0), rel=1e-9)


def test_projective_needs_hyperbolic():
    with pytest.raises(GeometryError):
        projective_cauchy_w(TrigCurve.circle((0, 0), 0.3), k=1.0)


def test_kappa_from_omega_examples():
    r0 = 0.8
    body = TrigCurve.circle((0, 0), math.tanh(r0))
    fr = tangent_frames(body, -1.0, np.array([0.3]))
    got = kappa_from_omega(-1.0, fr, 1 / cc.ell(-1.0, r0))
    assert got[0] == pytest.approx(cc.circle_curvature(-1.0, r0), rel=1e-12)
    assert kappa_from_omega(-1.0, fr, 0.0)[0] == 0.0
    assert dr_domega(-1.0, fr)[0] == pytest.approx(0.0, abs=1e-12)


def test_dr_domega_euclidean_is_minus_x():
    body = TrigCurve.ellipse((0.2, 0.1), (0.6, 0.3), 0.4)
    fr = support_frames(body, 0.0, np.linspace(0, 2 * math.pi, 32, endpoint=False))
    assert np.allclose(dr_domega(0.0, fr), -fr.x, atol=1e-14)


@pytest.mark.parametrize("k", [-1.0, 1.0])
def test_curvature_and_dr_against_differences(k):
    body = random_convex_body(np.random.default_rng(21), k)
    t = 2 * math.pi * np.arange(128) / 128
    fr = tangent_frames(body, k, t)
    h = 1e-4 * 2 * math.pi
    om = fr.omega
    dom = central_diff(lambda u: om + wrap_angle(tangent_frames(body, k, u).omega - om), t, h)
    assert np.max(np.abs(kappa_from_omega(k, fr, dom / fr.speed) - fr.kappa_g)) < 1e-6
    dr = central_diff(lambda u: tangent_frames(body, k, u).r, t, h)
    assert np.max(np.abs(dr / dom - dr_domega(k, fr))) < 1e-6


def test_cauchy_polar_examples():
    for radius in (0.5, 2.0):
        assert cauchy_polar(0.0, TrigCurve.circle((0, 0), radius)).value == pytest.approx(2 * math.pi * radius)
    assert cauchy_polar(-1.0, H_CIRCLE).value == pytest.approx(2 * math.pi * SINH1, rel=1e-12)
    with pytest.raises(GeometryError) as exc:
        cauchy_polar(0.0, TrigCurve.circle((3, 0), 1.0))
    assert exc.value.code == "DOMAIN"


def test_cauchy_polar_pointwise_equals_minkowski_in_plane():
    body = TrigCurve.ellipse((0.1, -0.05), (0.7, 0.4), 0.3)
    t = np.linspace(0, 2 * math.pi, 50, endpoint=False)
    first, second = cauchy_polar_integrands(0.0, body, t)
    assert np.allclose(first, minkowski_integrand(0.0, body, t), atol=1e-12)
    assert np.allclose(second, first, atol=1e-12)


def test_measure_ratio_examples():
    m = measure_ratios(-1.0, H_CIRCLE, np.linspace(0, 6, 7))
    assert np.allclose(m.domega_dtheta, 1.0)
    assert np.allclose(m.dphi_domega, 1.0)
    body = TrigCurve.ellipse((0.1, 0.05), (0.5, 0.3), 0.7)
    m = measure_ratios(-1.0, body, np.linspace(0, 6, 40))
    assert np.allclose(m.dphi_domega + m.dphitilde_domega, 2.0, atol=1e-14)
    assert np.allclose(m.dphi_dtheta, m.dphi_dtheta_poincare, atol=1e-10)
    assert np.allclose(m.dphi_dtheta - m.dphi_domega * m.domega_dtheta, 0.0, atol=1e-12)


@pytest.mark.parametrize("k", [-1.0, 0.0, 1.0])
def test_measure_ratios_vs_oracles(k):
    body = random_convex_body(np.random.default_rng(8), k)
    t = 2 * math.pi * np.arange(32) / 32
    m = measure_ratios(k, body, t)
    for name, val in measure_oracles(k, body, t).items():
        assert np.max(np.abs(getattr(m, name) - val)) < 1e-5, name


def test_geodesic_arc_witness():
    tri = Polygon([[-0.5, -0.4], [0.6, -0.4], [0.1, 0.6]])
    cauchy, mink = arc_integrals(-1.0, tri, 0)
    assert abs(cauchy) < 1e-10
    assert abs(mink) > 1e-3


def test_applicable_methods():
    assert "cauchy-polar" not in applicable_methods(0.0, TrigCurve.circle((3, 0), 1.0))
    assert "projective-w" in applicable_methods(-1.0, H_CIRCLE)
    assert "projective-w" not in applicable_methods(1.0, H_CIRCLE)
    with pytest.raises(GeometryError):
        perimeter(0.0, H_CIRCLE, "bogus")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([-1.0, 0.0, 1.0]))
def test_methods_agree_on_random_bodies(seed, k):
    body = random_convex_body(np.random.default_rng(seed), k)
    vals = [perimeter(k, body, m).value for m in applicable_methods(k, body)]
    assert (max(vals) - min(vals)) / min(vals) < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([-1.0, 0.0, 1.0]),
       st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)))
def test_minkowski_origin_independent(seed, k, origin):
    body = random_convex_body(np.random.default_rng(seed), k)
    ref = arclength_perimeter(body, k)
    assert minkowski_perimeter(k, body, origin=np.array(origin)).value == pytest.approx(ref, rel=1e-8)
