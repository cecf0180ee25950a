"""Convex bodies drawn in a chart: polygons and smooth parametric curves.

Smooth boundaries are periodic curves ``t -> gamma(t)``, ``t in [0, 2 pi)``,
traversed counterclockwise.  Polygons are counterclockwise vertex lists whose
sides are chart segments, i.e. geodesics in every regime.

Chart convexity is intrinsic convexity because geodesics are chart lines, so
validation happens entirely in the chart.
"""

from functools import cached_property
import json
import math

import numpy as np

from .errors import GeometryError
from .models import apply_projective, check_in_chart, disk_radius
from .quadrature import bisect_many

TWO_PI = 2.0 * math.pi
VALIDATION_GRID = 1024
TANGENT_GRID = 512


def wrap_angle(a):
    """Wrap angles into ``(-pi, pi]``."""
    return np.pi - np.mod(np.pi - np.asarray(a, dtype=float), TWO_PI)


def cross2(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


class Polygon:
    """Counterclockwise polygon with geodesic (chart-straight) sides.

    One- and two-vertex polygons are accepted as degenerate bodies (a point
    or a segment) by the Hilbert and projective routines; :func:`validate`
    rejects them.
    """

    kind = "polygon"

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) == 0 or not np.all(np.isfinite(v)):
            raise GeometryError("BAD_INPUT", "polygon vertices must be a non-empty list of [x, y]")
        self.vertices = v

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polygon({self.vertices.tolist()!r})"

    @property
    def n_sides(self):
        return len(self.vertices)

    def edge(self, i):
        i = int(i) % len(self.vertices)
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    def transformed(self, m):
        return Polygon(apply_projective(m, self.vertices))

    def affine(self, a, b):
        return Polygon(self.vertices @ np.asarray(a, float).T + np.asarray(b, float))

    def sample(self, n=None):
        return self.vertices

    def to_json(self):
        return {"kind": "polygon", "vertices": self.vertices.tolist()}


class SmoothCurve:
    """Closed C^2 curve ``t -> gamma(t)`` of period ``2 pi``.

    Subclasses provide ``point``, ``d1`` and ``d2`` for arrays of parameters,
    each returning an array of shape ``t.shape + (2,)``.
    """

    kind = "smooth"

    def point(self, t):
        raise NotImplementedError

    def d1(self, t):
        raise NotImplementedError

    def d2(self, t):
        raise NotImplementedError

    def transformed(self, m):
        return ProjectiveCurve(self, m)

    def sample(self, n=VALIDATION_GRID):
        return self.point(TWO_PI * np.arange(n) / n)

    def normal_angle(self, t):
        """Angle of the outward chart normal (tangent rotated clockwise)."""
        d = self.d1(t)
        return np.arctan2(-d[..., 0], d[..., 1])

    def chart_curvature(self, t):
        d1, d2 = self.d1(t), self.d2(t)
        return cross2(d1, d2) / np.hypot(d1[..., 0], d1[..., 1]) ** 3

    @cached_property
    def _normal_table(self):
        t = TWO_PI * np.arange(TANGENT_GRID + 1) / TANGENT_GRID
        nu = np.unwrap(self.normal_angle(t))
        return t, nu

    def contact_parameter(self, angles):
        """Parameters where the outward chart normal points along ``angles``.

        Requires positive chart curvature (the normal angle is then monotone in
        ``t``); solved by bracketed bisection to machine precision.
        """
        angles = np.asarray(angles, dtype=float)
        t_grid, nu = self._normal_table
        target = nu[0] + np.mod(angles - nu[0], TWO_PI)
        j = np.clip(np.searchsorted(nu, target, side="right") - 1, 0, TANGENT_GRID - 1)
        lo, hi = t_grid[j], t_grid[j + 1]

        def g(t):
            return wrap_angle(self.normal_angle(t) - target)

        return bisect_many(g, lo, hi, iterations=56)


class TrigCurve(SmoothCurve):
    """Trigonometric-polynomial curve.

    ``x_coeffs = [a0, a1, b1, a2, b2, ...]`` encodes
    ``x(t) = a0 + sum_n a_n cos(n t) + b_n sin(n t)``; likewise ``y_coeffs``.
    """

    kind = "trig"

    def __init__(self, x_coeffs, y_coeffs):
        self.x_coeffs = self._check(x_coeffs)
        self.y_coeffs = self._check(y_coeffs)
        degree = max(len(self.x_coeffs), len(self.y_coeffs)) // 2
        self.degree = degree
        self._cx = self._split(self.x_coeffs, degree)
        self._cy = self._split(self.y_coeffs, degree)
        self._n = np.arange(1, degree + 1, dtype=float)

    @staticmethod
    def _check(coeffs):
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0 or c.size % 2 == 0 or not np.all(np.isfinite(c)):
            raise GeometryError("BAD_INPUT", "trig coefficients must be [a0, a1, b1, ...] (odd length)")
        return c

    @staticmethod
    def _split(c, degree):
        full = np.zeros(2 * degree + 1)
        full[: c.size] = c
        return full[0], full[1::2], full[2::2]

    @classmethod
    def circle(cls, center, radius):
        return cls([center[0], radius, 0.0], [center[1], 0.0, radius])

    @classmethod
    def ellipse(cls, center, semi_axes, angle=0.0):
        ca, sa = math.cos(angle), math.sin(angle)
        a, b = semi_axes
        return cls([center[0], a * ca, -b * sa], [center[1], a * sa, b * ca])

    def __repr__(self):
        return f"TrigCurve({self.x_coeffs.tolist()!r}, {self.y_coeffs.tolist()!r})"

    def _eval(self, t, order):
        t = np.asarray(t, dtype=float)
        nt = t[..., None] * self._n
        cos, sin = np.cos(nt), np.sin(nt)
        n = self._n
        out = []
        for a0, a, b in (self._cx, self._cy):
            if order == 0:
                val = a0 + cos @ a + sin @ b
            elif order == 1:
                val = sin @ (-n * a) + cos @ (n * b)
            else:
                val = -(cos @ (n * n * a) + sin @ (n * n * b))
            out.append(val)
        return np.stack(out, axis=-1)

    def point(self, t):
        return self._eval(t, 0)

    def d1(self, t):
        return self._eval(t, 1)

    def d2(self, t):
        return self._eval(t, 2)

    @property
    def is_ellipse(self):
        return self.degree == 1

    def ellipse_frame(self):
        """Centre and matrix ``U`` with ``gamma(t) = centre + U (cos t, sin t)``."""
        u = np.array([[self._cx[1][0], self._cx[2][0]], [self._cy[1][0], self._cy[2][0]]])
        return np.array([self._cx[0], self._cy[0]]), u

    def affine(self, a, b):
        """Image under ``x -> a x + b``; trigonometric curves are closed under affine maps."""
        a = np.asarray(a, dtype=float)
        deg = self.degree
        cx = np.zeros(2 * deg + 1)
        cy = np.zeros(2 * deg + 1)
        cx[: self.x_coeffs.size] = self.x_coeffs
        cy[: self.y_coeffs.size] = self.y_coeffs
        nx = a[0, 0] * cx + a[0, 1] * cy
        ny = a[1, 0] * cx + a[1, 1] * cy
        nx[0] += b[0]
        ny[0] += b[1]
        return TrigCurve(nx, ny)

    def to_json(self):
        return {"kind": "trig", "x_coeffs": self.x_coeffs.tolist(), "y_coeffs": self.y_coeffs.tolist()}


class ProjectiveCurve(SmoothCurve):
    """Image of a smooth curve under a projective map of the chart.

    Used to move the origin: chart isometries of all three regimes are
    projective, so re-centring preserves straight geodesics.
    """

    kind = "smooth"

    def __init__(self, base, matrix):
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)

    def _hom(self, t):
        m = self.matrix
        p, d1, d2 = self.base.point(t), self.base.d1(t), self.base.d2(t)
        x = p @ m[:, :2].T + m[:, 2]
        x1 = d1 @ m[:, :2].T
        x2 = d2 @ m[:, :2].T
        return x, x1, x2

    def point(self, t):
        x, _, _ = self._hom(t)
        return x[..., :2] / x[..., 2:3]

    def d1(self, t):
        x, x1, _ = self._hom(t)
        w, w1 = x[..., 2:3], x1[..., 2:3]
        return (x1[..., :2] * w - x[..., :2] * w1) / (w * w)

    def d2(self, t):
        x, x1, x2 = self._hom(t)
        w, w1, w2 = x[..., 2:3], x1[..., 2:3], x2[..., 2:3]
        p = x[..., :2] / w
        p1 = (x1[..., :2] - p * w1) / w
        return (x2[..., :2] - 2.0 * p1 * w1 - p * w2) / w

    def transformed(self, m):
        return ProjectiveCurve(self.base, np.asarray(m, float) @ self.matrix)


def is_smooth(body):
    return isinstance(body, SmoothCurve)


def validate(body, k, relaxed=False, grid=VALIDATION_GRID):
    """Check the body invariants for curvature ``k`` and return the body.

    ``relaxed=True`` accepts any regular counterclockwise closed C^2 curve
    (convexity is not required; used for the Minkowski formula, which measures
    arbitrary closed curves).  Raises :class:`GeometryError` with codes
    ``BAD_INPUT``, ``NOT_CCW``, ``NON_CONVEX``, ``IRREGULAR`` or ``OUTSIDE_CHART``.
    """
    if isinstance(body, Polygon):
        v = body.vertices
        if len(v) < 3:
            raise GeometryError("BAD_INPUT", "a polygon body needs at least 3 vertices")
        check_in_chart(k, v)
        e = np.roll(v, -1, axis=0) - v
        turns = cross2(e, np.roll(e, -1, axis=0))
        if np.all(turns < 0):
            raise GeometryError("NOT_CCW", "polygon vertices are clockwise")
        if not np.all(turns > 0):
            raise GeometryError("NON_CONVEX", "polygon has a reflex or straight vertex")
        area2 = np.sum(cross2(v, np.roll(v, -1, axis=0)))
        winding = np.sum(np.arctan2(turns, np.sum(e * np.roll(e, -1, axis=0), axis=-1)))
        if area2 <= 0 or abs(winding - TWO_PI) > 1e-6:
            raise GeometryError("NON_CONVEX", "polygon is not simple")
        return body
    if not isinstance(body, SmoothCurve):
        raise GeometryError("BAD_INPUT", f"unsupported body type {type(body).__name__}")
    t = TWO_PI * np.arange(grid) / grid
    p, d1, d2 = body.point(t), body.d1(t), body.d2(t)
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(d1)) and np.all(np.isfinite(d2))):
        raise GeometryError("BAD_INPUT", "curve evaluates to non-finite values")
    check_in_chart(k, p)
    speed = np.hypot(d1[..., 0], d1[..., 1])
    if np.any(speed <= 1e-12 * max(1.0, float(np.max(np.abs(p))))):
        raise GeometryError("IRREGULAR", "curve has a vanishing tangent")
    bend = cross2(d1, d2)
    area2 = np.mean(cross2(p, d1)) * TWO_PI
    if area2 <= 0:
        raise GeometryError("NOT_CCW", "curve is traversed clockwise")
    if relaxed:
        return body
    if np.all(bend < 0):
        raise GeometryError("NOT_CCW", "curve is traversed clockwise")
    if not np.all(bend > 0):
        raise GeometryError("NON_CONVEX", "chart curvature changes sign")
    nu = np.unwrap(body.normal_angle(np.append(t, TWO_PI)))
    if abs(nu[-1] - nu[0] - TWO_PI) > 1e-6:
        raise GeometryError("NON_CONVEX", "tangent turns more than once")
    return body


def contains(body, point, n=VALIDATION_GRID):
    """Whether ``point`` is strictly inside the (convex) body."""
    pts = body.vertices if isinstance(body, Polygon) else body.sample(n)
    edges = np.roll(pts, -1, axis=0) - pts
    return bool(np.all(cross2(edges, np.asarray(point, float) - pts) > 0))


def support_points(body, angles):
    """Contact data of the chart support lines with outward normals ``angles``.

    Returns ``(offset, contact, t, edge_contact)`` where ``offset`` is the chart
    support function ``max n . x`` and ``t`` is the contact parameter (for a
    polygon, the vertex index as a float).  Polygon ties, where the support
    line contains a whole side, report the side midpoint and
    ``edge_contact=True``.
    """
    angles = np.asarray(angles, dtype=float)
    n = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    if isinstance(body, Polygon):
        v = body.vertices
        vals = n @ v.T
        idx = np.argmax(vals, axis=-1)
        best = np.take_along_axis(vals, idx[..., None], -1)[..., 0]
        contact = v[idx]
        edge = np.zeros(angles.shape, dtype=bool)
        if len(v) >= 2:
            scale = 1.0 + np.max(np.abs(v))
            nxt = (idx + 1) % len(v)
            prv = (idx - 1) % len(v)
            for other in (nxt, prv):
                ov = np.take_along_axis(vals, other[..., None], -1)[..., 0]
                tie = (best - ov <= 1e-13 * scale) & (other != idx)
                contact = np.where(tie[..., None], 0.5 * (v[idx] + v[other]), contact)
                edge |= tie
        return best, contact, idx.astype(float), edge
    t = body.contact_parameter(angles)
    contact = body.point(t)
    offset = np.sum(n * contact, axis=-1)
    return offset, contact, t, np.zeros(angles.shape, dtype=bool)


def view_angles(sources, ref_angles, points):
    """Counterclockwise angles in ``(-pi, pi]`` from direction ``ref_angles`` at
    ``sources`` to the rays toward ``points`` (broadcast over leading axes)."""
    d = points - sources[..., None, :] if points.ndim == sources.ndim + 1 else points - sources
    ang = np.arctan2(d[..., 1], d[..., 0])
    ref = ref_angles[..., None] if ang.ndim > np.ndim(ref_angles) else ref_angles
    return wrap_angle(ang - ref)


def tangent_points(body, sources, ref_angles):
    """Extreme rays from external points toward a convex body.

    For each source point ``R`` (shape ``(m, 2)``) and reference direction
    (shape ``(m,)``, the direction from which angles are measured
    counterclockwise) return ``(psi_min, psi_max, p_min, p_max)``: the smallest
    and largest angle to a point of the body and the contact points realising
    them.  The body must lie in the open half-plane to the left of the
    reference direction, so all angles lie in ``(0, pi)``.
    """
    sources = np.atleast_2d(np.asarray(sources, dtype=float))
    ref_angles = np.atleast_1d(np.asarray(ref_angles, dtype=float))
    if isinstance(body, Polygon):
        v = body.vertices
        psi = np.mod(view_angles(sources, ref_angles, np.broadcast_to(v, (len(sources),) + v.shape)), TWO_PI)
        i_min = np.argmin(psi, axis=-1)
        i_max = np.argmax(psi, axis=-1)
        rows = np.arange(len(sources))
        return psi[rows, i_min], psi[rows, i_max], v[i_min], v[i_max]
    t = TWO_PI * np.arange(TANGENT_GRID) / TANGENT_GRID
    p, d = body.point(t), body.d1(t)
    f = cross2(p[None, :, :] - sources[:, None, :], d[None, :, :])
    pos = f > 0
    nxt = np.roll(pos, -1, axis=1)
    rise = ~pos & nxt
    fall = pos & ~nxt
    if np.any(rise.sum(axis=1) != 1) or np.any(fall.sum(axis=1) != 1):
        raise GeometryError("DEGENERATE_VIEW", "source point too close to the body or body not convex")
    j_rise = np.argmax(rise, axis=1)
    j_fall = np.argmax(fall, axis=1)
    step = TWO_PI / TANGENT_GRID

    def solve(j):
        lo = t[j]

        def g(tt):
            return cross2(body.point(tt) - sources, body.d1(tt))

        return bisect_many(g, lo, lo + step, iterations=56)

    t_min, t_max = solve(j_rise), solve(j_fall)
    p_min, p_max = body.point(t_min), body.point(t_max)
    psi_min = np.mod(view_angles(sources, ref_angles, p_min), TWO_PI)
    psi_max = np.mod(view_angles(sources, ref_angles, p_max), TWO_PI)
    return psi_min, psi_max, p_min, p_max


def body_from_json(data):
    """Build a body from the JSON schema used on the command line.

    ``{"kind": "polygon", "vertices": [[x, y], ...]}``,
    ``{"kind": "circle", "center": [x, y], "chart_radius": r}`` or
    ``{"kind": "trig", "x_coeffs": [...], "y_coeffs": [...]}``.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise GeometryError("BAD_INPUT", "body JSON must be an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "polygon":
            return Polygon(data["vertices"])
        if kind == "circle":
            radius = float(data["chart_radius"])
            if not radius > 0:
                raise GeometryError("BAD_INPUT", "chart_radius must be positive")
            return TrigCurve.circle(data.get("center", [0.0, 0.0]), radius)
        if kind == "trig":
            return TrigCurve(data["x_coeffs"], data["y_coeffs"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError("BAD_INPUT", f"malformed {kind} body: {exc}") from exc
    raise GeometryError("BAD_INPUT", f"unknown body kind {kind!r}")


def load_body(path):
    try:
        with open(path) as fh:
            text = fh.read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise GeometryError("BAD_INPUT", f"cannot read body file {path}: {exc}") from exc
    return body_from_json(data)


def random_convex_body(rng, k, center_scale=0.2, size=(0.3, 0.6), harmonics=3, family=None):
    """Random smooth strictly convex trigonometric body for curvature ``k``.

    Two families alternate: bodies parameterised by their normal angle (built
    from a positive support function) and perturbed ellipses in the ordinary
    angular parameter.  Hyperbolic bodies are kept inside 0.9 of the disk.
    """
    limit = 0.9 * disk_radius(k) if k < 0 else math.inf
    family = family if family is not None else int(rng.integers(2))
    for _ in range(1000):
        center = rng.uniform(-center_scale, center_scale, size=2)
        if family == 0:
            h0 = rng.uniform(*size)
            coeffs = rng.normal(size=(harmonics, 2)) * h0 * 0.25 / np.arange(2, harmonics + 2)[:, None] ** 2
            body = _support_function_body(center, h0, coeffs)
        else:
            a, b = rng.uniform(*size), rng.uniform(*size)
            base = TrigCurve.ellipse(center, (a, b), rng.uniform(0, math.pi))
            x = np.zeros(2 * harmonics + 1)
            y = np.zeros(2 * harmonics + 1)
            x[:3], y[:3] = base.x_coeffs, base.y_coeffs
            amp = 0.04 * min(a, b)
            x[3:] = rng.normal(scale=amp, size=2 * harmonics - 2) / np.repeat(np.arange(2, harmonics + 1), 2) ** 2
            y[3:] = rng.normal(scale=amp, size=2 * harmonics - 2) / np.repeat(np.arange(2, harmonics + 1), 2) ** 2
            body = TrigCurve(x, y)
        try:
            validate(body, k)
        except GeometryError:
            continue
        if np.max(np.hypot(*body.sample().T)) < limit:
            return body
    raise RuntimeError("could not draw a valid random body")


def _support_function_body(center, h0, coeffs):
    """Curve ``h n + h' n_perp`` for ``h(v) = h0 + sum c_n cos(n v) + s_n sin(n v)``.

    The result is a trigonometric polynomial of one higher degree, parameterised
    by the angle of its outward normal; its coefficients are read off exactly
    from an FFT of enough samples.
    """
    deg = len(coeffs) + 2
    m = 4 * deg + 4
    v = TWO_PI * np.arange(m) / m
    n = np.arange(2, len(coeffs) + 2)
    h = h0 + np.cos(np.outer(v, n)) @ coeffs[:, 0] + np.sin(np.outer(v, n)) @ coeffs[:, 1]
    dh = (-np.sin(np.outer(v, n)) * n) @ coeffs[:, 0] + (np.cos(np.outer(v, n)) * n) @ coeffs[:, 1]
    x = center[0] + h * np.cos(v) - dh * np.sin(v)
    y = center[1] + h * np.sin(v) + dh * np.cos(v)
    return TrigCurve(_trig_coeffs(x, deg), _trig_coeffs(y, deg))


def _trig_coeffs(samples, degree):
    f = np.fft.rfft(samples) / len(samples)
    out = np.zeros(2 * degree + 1)
    out[0] = f[0].real
    out[1::2] = 2.0 * f[1 : degree + 1].real
    out[2::2] = -2.0 * f[1 : degree + 1].imag
    return out
