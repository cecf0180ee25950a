import json
import math

import numpy as np
import pytest

from croftonlab.body import (Polygon, TrigCurve, body_from_json, contains, load_body, random_convex_body,
                             support_points, validate)
from croftonlab.errors import GeometryError

SQUARE = Polygon([[-1, -1], [1, -1], [1, 1], [-1, 1]])


def test_validate_examples():
    assert validate(SQUARE, 0.0) is SQUARE
    reflex = Polygon([[0, 0], [2, 0], [1, 0.3], [2, 2], [0, 2]])
    with pytest.raises(GeometryError) as exc:
        validate(reflex, 0.0)
    assert exc.value.code == "NON_CONVEX"
    with pytest.raises(GeometryError) as exc:
        validate(TrigCurve.circle((0, 0), 1.1), -1.0)
    assert exc.value.code == "OUTSIDE_CHART"


def test_clockwise_polygon_rejected():
    with pytest.raises(GeometryError) as exc:
        validate(Polygon(SQUARE.vertices[::-1]), 0.0)
    assert exc.value.code == "NOT_CCW"


def test_smooth_validation():
    validate(TrigCurve.ellipse((0.1, 0.0), (0.5, 0.2), 0.3), -1.0)
    # figure-eight style curve is not convex
    with pytest.raises(GeometryError):
        validate(TrigCurve([0, 1, 0], [0, 0, 0, 0, 0.5]), 0.0)


def test_trig_curve_derivatives():
    curve = TrigCurve([0.1, 0.7, 0.0, 0.1, 0.05], [0.0, 0.0, 0.5, -0.02, 0.03])
    t = np.linspace(0, 2 * math.pi, 17)
    h = 1e-5
    d1 = (curve.point(t + h) - curve.point(t - h)) / (2 * h)
    d2 = (curve.point(t + h) - 2 * curve.point(t) + curve.point(t - h)) / h ** 2
    assert np.allclose(curve.d1(t), d1, atol=1e-9)
    assert np.allclose(curve.d2(t), d2, atol=1e-4)


def test_projective_image_derivatives():
    curve = TrigCurve.ellipse((0.1, 0.2), (0.4, 0.25), 0.5)
    m = np.array([[1.1, 0.1, 0.05], [0.0, 0.9, -0.1], [0.2, 0.1, 1.0]])
    img = curve.transformed(m)
    t = np.linspace(0, 2 * math.pi, 13)
    h = 1e-5
    assert np.allclose(img.d1(t), (img.point(t + h) - img.point(t - h)) / (2 * h), atol=1e-8)


def test_support_points_square():
    off, contact, _, edge = support_points(SQUARE, np.array([math.pi / 4, 0.0]))
    assert off[0] == pytest.approx(math.sqrt(2))
    assert np.allclose(contact[0], [1, 1])
    assert off[1] == pytest.approx(1.0)
    assert edge[1]


def test_support_points_circle():
    circle = TrigCurve.circle((0.2, -0.1), 0.5)
    angles = np.linspace(0, 2 * math.pi, 32, endpoint=False)
    off, contact, _, _ = support_points(circle, angles)
    n = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    assert np.allclose(off, n @ [0.2, -0.1] + 0.5, atol=1e-13)
    assert np.allclose(contact, [0.2, -0.1] + 0.5 * n, atol=1e-10)


def test_contains():
    assert contains(SQUARE, (0.5, 0.5))
    assert not contains(SQUARE, (1.5, 0.0))
    assert contains(TrigCurve.circle((0, 0), 1.0), (0.7, 0.0))


def test_json_round_trip(tmp_path):
    for body in (SQUARE, TrigCurve.ellipse((0.1, 0.0), (0.5, 0.2), 0.3)):
        path = tmp_path / "b.json"
        path.write_text(json.dumps(body.to_json()))
        again = load_body(path)
        t = np.linspace(0, 1, 5)
        if isinstance(body, Polygon):
            assert np.array_equal(again.vertices, body.vertices)
        else:
            assert np.allclose(again.point(t), body.point(t))


def test_circle_json_uses_chart_radius():
    body = body_from_json({"kind": "circle", "center": [0, 0], "chart_radius": math.tanh(1.0)})
    assert np.allclose(np.hypot(*body.point(np.array([0.3])).T), math.tanh(1.0))


@pytest.mark.parametrize("text", ["", "{", '{"kind": "blob"}', '{"kind": "polygon"}'])
def test_bad_body_files(tmp_path, text):
    path = tmp_path / "b.json"
    path.write_text(text)
    with pytest.raises(GeometryError) as exc:
        load_body(path)
    assert exc.value.code == "BAD_INPUT"


def test_missing_body_file(tmp_path):
    with pytest.raises(GeometryError) as exc:
        load_body(tmp_path / "nope.json")
    assert exc.value.code == "BAD_INPUT"


@pytest.mark.parametrize("k", [-1.0, 0.0, 1.0])
def test_random_bodies_validate(k):
    rng = np.random.default_rng(3)
    for _ in range(10):
        validate(random_convex_body(rng, k), k)
