"""Intrinsic boundary frames and support-line geometry of convex bodies.

All intrinsic quantities are read off the chart through the polar form of the
metric, ``ds^2 = drho^2 + ell(rho)^2 dtheta^2``, using

    rho = arctan_k(R),  ell(rho) = R / sqrt(1 + k R^2),  drho/dR = 1 / (1 + k R^2)

for a chart point at chart radius ``R``.  The origin of polar coordinates is
the chart centre; use :func:`croftonlab.models.isometry_to_centre` to move it.
"""

from dataclasses import dataclass, fields
import math

import numpy as np

from . import curvature as cc
from .body import Polygon, cross2, support_points, tangent_points, wrap_angle
from .errors import GeometryError
from .models import ChartLine, chart_distance, disk_radius
from .quadrature import QuadResult, integrate_adaptive, integrate_periodic

POLE_EPS = 1e-9


@dataclass
class BoundaryFrame:
    """Polar frame of boundary points (fields are floats or equal-shape arrays).

    ``alpha`` is the angle from the radial unit vector to the outward normal;
    ``speed`` is ``ds/dt``.
    """

    t: np.ndarray
    point: np.ndarray
    rho: np.ndarray
    theta: np.ndarray
    alpha: np.ndarray
    speed: np.ndarray
    kappa_g: np.ndarray
    s: np.ndarray


@dataclass
class SupportFrame(BoundaryFrame):
    """Boundary frame plus the right-triangle data of the support line.

    ``r`` is the signed distance from the origin to the support line, ``omega``
    the direction of its foot, ``x`` the signed distance from the foot to the
    contact point and ``beta = pi/2 - alpha``.  ``phi`` and ``phi_tilde`` are
    the ideal end points of the support line (``nan`` unless ``k < 0``).
    """

    r: np.ndarray = None
    x: np.ndarray = None
    beta: np.ndarray = None
    omega: np.ndarray = None
    phi: np.ndarray = None
    phi_tilde: np.ndarray = None
    edge_contact: np.ndarray = None

    def item(self, i):
        """Single-sample view of a batched frame."""
        return SupportFrame(**{f.name: _index(getattr(self, f.name), i) for f in fields(self)})


def _index(value, i):
    if value is None:
        return None
    arr = np.asarray(value)
    if arr.ndim == 0:
        return value
    out = arr[i]
    return float(out) if np.ndim(out) == 0 and arr.dtype != bool else out


def metric_speed(k, p, d):
    """Intrinsic length of chart velocity ``d`` at chart point ``p``."""
    q = 1.0 + k * np.sum(p * p, axis=-1)
    pd = np.sum(p * d, axis=-1)
    return np.sqrt(np.sum(d * d, axis=-1) / q - k * pd * pd / (q * q))


def _polar(k, p, d1, d2=None):
    """Polar data and the (unnormalised) intrinsic tangent of a chart velocity.

    Returns ``rho, theta, ell(rho), rho', ell theta'`` and, when ``d2`` is given,
    ``rho''`` and ``(ell theta')'``.
    """
    radius = np.hypot(p[..., 0], p[..., 1])
    if np.any(radius < POLE_EPS):
        raise GeometryError("NEAR_POLE", "boundary point within 1e-9 of the origin")
    q = 1.0 + k * radius * radius
    if np.any(q <= 0):
        raise GeometryError("OUTSIDE_CHART", "point on or outside the ideal boundary")
    rho = cc.arctan_k(k, radius)
    theta = np.arctan2(p[..., 1], p[..., 0])
    ell = radius / np.sqrt(q)
    r1 = np.sum(p * d1, axis=-1) / radius
    th1 = cross2(p, d1) / (radius * radius)
    rho1 = r1 / q
    out = [rho, theta, ell, rho1, ell * th1]
    if d2 is not None:
        r2 = (np.sum(d1 * d1, axis=-1) + np.sum(p * d2, axis=-1)) / radius - r1 * r1 / radius
        th2 = cross2(p, d2) / (radius * radius) - 2.0 * r1 * th1 / radius
        rho2 = r2 / q - 2.0 * k * radius * r1 * r1 / (q * q)
        ell_c = 1.0 / np.sqrt(q)
        out += [rho2, ell_c * rho1 * th1 + ell * th2]
    return out


def _frame_arrays(k, p, d1, d2):
    rho, theta, ell, rho1, lth1, rho2, lth2 = _polar(k, p, d1, d2)
    speed = np.hypot(rho1, lth1)
    # outward normal = tangent rotated clockwise, in the (u, e_theta) basis
    alpha = np.arctan2(-rho1, lth1)
    alpha1 = (lth1 * -rho2 - (-rho1) * lth2) / (speed * speed)
    kappa = cc.circle_curvature(k, rho) * np.cos(alpha) + alpha1 / speed
    return rho, theta, alpha, speed, kappa


def _polygon_geometry(body, t):
    v = body.vertices
    n = len(v)
    t = np.asarray(t, dtype=float)
    i = np.floor(t).astype(int)
    u = t - i
    if np.any(u == 0.0):
        raise GeometryError("VERTEX", "frame requested at a polygon vertex; use a one-sided parameter")
    i %= n
    a, b = v[i], v[(i + 1) % n]
    return a + u[..., None] * (b - a), b - a, np.zeros(a.shape)


def _geometry(body, t):
    if isinstance(body, Polygon):
        return _polygon_geometry(body, t)
    return body.point(t), body.d1(t), body.d2(t)


def arclength_at(body, k, t, tol=1e-12):
    """Intrinsic arclength from parameter 0 to each ``t`` (``t >= 0``)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    order = np.argsort(t)
    out = np.empty_like(t)
    total, prev = 0.0, 0.0
    for j in order:
        if isinstance(body, Polygon):
            total = _polygon_arclength(body, k, t[j])
        else:
            total += integrate_adaptive(lambda s: metric_speed(k, body.point(s), body.d1(s)),
                                        prev, t[j], tol=tol).value
        prev = t[j]
        out[j] = total
    return out


def _polygon_arclength(body, k, t):
    v = body.vertices
    n = len(v)
    full, u = divmod(t, 1.0)
    full = int(full)
    total = 0.0
    for i in range(full):
        total += chart_distance(k, v[i % n], v[(i + 1) % n])
    if u > 0:
        a, b = v[full % n], v[(full + 1) % n]
        total += chart_distance(k, a, a + u * (b - a))
    return total


def boundary_frame(body, k, t, arclength=True):
    """Intrinsic frame of the boundary at parameter(s) ``t``.

    Geodesic curvature is ``c(rho) cos(alpha) + d alpha / ds`` with
    ``d alpha / ds`` evaluated analytically from the first two chart
    derivatives.  On a polygon ``t`` runs over ``[0, n)`` with integer values
    at vertices, where the frame is undefined (``VERTEX``).
    """
    t_arr = np.asarray(t, dtype=float)
    p, d1, d2 = _geometry(body, t_arr)
    rho, theta, alpha, speed, kappa = _frame_arrays(k, p, d1, d2)
    s = arclength_at(body, k, t_arr.ravel()).reshape(t_arr.shape) if arclength else np.full(t_arr.shape, np.nan)
    frame = BoundaryFrame(t_arr, p, rho, theta, alpha, speed, kappa, s)
    return _scalarize(frame) if t_arr.ndim == 0 else frame


def _scalarize(frame):
    for f in fields(frame):
        val = getattr(frame, f.name)
        if isinstance(val, np.ndarray) and val.ndim == 0:
            setattr(frame, f.name, float(val) if val.dtype != bool else bool(val))
    return frame


def _support_geometry(k, contact, omega):
    """Right-triangle data ``(r, x, h_chart)`` of the support line with normal ``omega``."""
    n = np.stack([np.cos(omega), np.sin(omega)], axis=-1)
    offset = np.sum(n * contact, axis=-1)
    r = cc.arctan_k(k, offset)
    foot = offset[..., None] * n
    side = np.sign(cross2(contact, n))
    x = side * chart_distance(k, foot, contact)
    return r, x, offset


def _ideal_ends(k, omega, offset):
    if k >= 0:
        nan = np.full(np.shape(omega), np.nan)
        return nan, nan
    spread = np.arccos(np.clip(offset / disk_radius(k), -1.0, 1.0))
    return omega - spread, omega + spread


def support_frames(body, k, omega, arclength=False):
    """Support frames for the support lines with foot directions ``omega``.

    The chart support line with outward normal at angle ``omega`` is also the
    intrinsic support line whose foot of perpendicular from the origin lies in
    direction ``omega`` (the foot is on the normal through the centre), so the
    solve runs on the chart support function.  Polygon contacts at a vertex
    get ``speed = kappa_g = nan``; ties are reported through ``edge_contact``.
    """
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    omega = np.atleast_1d(omega)
    offset, contact, t, edge = support_points(body, omega)
    tangent = np.stack([-np.sin(omega), np.cos(omega)], axis=-1)
    rho, theta, ell, rho1, lth1 = _polar(k, contact, tangent)
    alpha = np.arctan2(-rho1, lth1)
    if isinstance(body, Polygon):
        speed = np.full(omega.shape, np.nan)
        kappa = np.full(omega.shape, np.nan)
        s = np.full(omega.shape, np.nan)
    else:
        _, _, alpha_c, speed, kappa = _frame_arrays(k, contact, body.d1(t), body.d2(t))
        s = arclength_at(body, k, t) if arclength else np.full(omega.shape, np.nan)
    r, x, _ = _support_geometry(k, contact, omega)
    beta = wrap_angle(0.5 * math.pi - alpha)
    phi, phi_t = _ideal_ends(k, omega, offset)
    frame = SupportFrame(t, contact, rho, theta, alpha, speed, kappa, s,
                         r, x, beta, wrap_angle(omega), phi, phi_t, edge)
    return frame.item(0) if scalar else frame


def tangent_frames(body, k, t, arclength=False):
    """Support frames of a smooth body indexed by the boundary parameter ``t``."""
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    p, d1, d2 = body.point(t), body.d1(t), body.d2(t)
    rho, theta, alpha, speed, kappa = _frame_arrays(k, p, d1, d2)
    omega = np.arctan2(-d1[..., 0], d1[..., 1])
    r, x, offset = _support_geometry(k, p, omega)
    beta = wrap_angle(0.5 * math.pi - alpha)
    phi, phi_t = _ideal_ends(k, omega, offset)
    s = arclength_at(body, k, t) if arclength else np.full(t.shape, np.nan)
    frame = SupportFrame(t, p, rho, theta, alpha, speed, kappa, s,
                         r, x, beta, omega, phi, phi_t, np.zeros(t.shape, dtype=bool))
    return frame.item(0) if scalar else frame


@dataclass
class SupportContact:
    line: ChartLine
    contact: np.ndarray
    frame: SupportFrame
    edge_contact: bool


def support_line_at_omega(body, k, omega):
    """Support line whose foot of perpendicular from the origin has direction ``omega``.

    The body lies on the non-positive side of the returned line (whose normal
    is the outward normal).  ``r`` is negative when the origin lies beyond the
    line, i.e. outside the body.

    Examples
    --------
    >>> from croftonlab.body import TrigCurve
    >>> sc = support_line_at_omega(TrigCurve.circle([0, 0], 0.5), 0.0, 0.0)
    >>> round(sc.frame.r, 12)
    0.5
    """
    frame = support_frames(body, k, float(omega))
    line = ChartLine.from_normal(float(omega), float(np.dot(frame.point, [math.cos(omega), math.sin(omega)])))
    return SupportContact(line, frame.point, frame, bool(frame.edge_contact))


@dataclass
class IdealSupport:
    """The two support lines of a body through the ideal point ``R(phi)``.

    ``psi1 <= psi2`` are measured counterclockwise from the boundary tangent at
    ``R``; ``h`` and ``w`` are the signed lengths ``D cot psi1`` and
    ``D (cot psi1 - cot psi2)`` cut on the ``phi``-normal (``D`` the disk radius).
    """

    right: ChartLine
    right_contact: np.ndarray
    left: ChartLine
    left_contact: np.ndarray
    psi1: float
    psi2: float
    w: float
    h: float


def ideal_psi(body, k, phi):
    """Vectorised ``(psi1, psi2, p1, p2)`` of the tangents from ``R(phi)``."""
    if k >= 0:
        raise GeometryError("DOMAIN", "ideal points exist only for k < 0")
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    radius = disk_radius(k)
    check = body.vertices if isinstance(body, Polygon) else body.sample()
    if np.max(np.hypot(check[:, 0], check[:, 1])) >= radius * (1.0 - 1e-12):
        raise GeometryError("OUTSIDE_CHART", "body touches the ideal boundary")
    sources = radius * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    return tangent_points(body, sources, phi + 0.5 * math.pi)


def support_lines_from_ideal(body, k, phi):
    """Tangent lines from ``R(phi)`` to the body and the ``w``, ``h`` lengths.

    Lines are oriented by the outward normal of the body, so the body lies on
    their negative side.
    """
    psi1, psi2, p1, p2 = ideal_psi(body, k, phi)
    psi1, psi2, p1, p2 = float(psi1[0]), float(psi2[0]), p1[0], p2[0]
    radius = disk_radius(k)
    src = radius * np.array([math.cos(phi), math.sin(phi)])
    right = _oriented_line(src, p1, clockwise=True)
    left = _oriented_line(src, p2, clockwise=False)
    h = radius / math.tan(psi1)
    w = radius * (1.0 / math.tan(psi1) - 1.0 / math.tan(psi2))
    return IdealSupport(right, p1, left, p2, psi1, psi2, w, h)


def _oriented_line(src, contact, clockwise):
    d = contact - src
    n = np.array([d[1], -d[0]]) if clockwise else np.array([-d[1], d[0]])
    n = n / np.hypot(*n)
    return ChartLine(n[0], n[1], -float(n @ src), 1)


def arclength_quad(body, k, tol=1e-12):
    """Direct integration of the intrinsic speed, as a ``QuadResult``."""
    if isinstance(body, Polygon):
        v = body.vertices
        value = float(np.sum(chart_distance(k, v, np.roll(v, -1, axis=0))))
        return QuadResult(value, 0.0, len(v), True)
    return integrate_periodic(lambda t: metric_speed(k, body.point(t), body.d1(t)), tol=tol, min_nodes=64)


def arclength_perimeter(body, k, tol=1e-12):
    """Perimeter by direct integration of the intrinsic speed (oracle)."""
    return arclength_quad(body, k, tol).value
