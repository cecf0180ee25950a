"""Unified trigonometry of the constant-curvature planes.

For curvature ``k`` the three functions

* ``ell(k, r)``              circumference of the radius-``r`` circle over 2*pi,
* ``area_ratio(k, r)``       area of the radius-``r`` disk over 2*pi,
* ``circle_curvature(k, r)`` geodesic curvature of the radius-``r`` circle,

cover the sphere (k > 0), the Euclidean plane (k = 0) and the hyperbolic
plane (k < 0) with one set of formulas.  All functions accept scalars or
numpy arrays for the length argument; ``k`` is a scalar.  Near ``k = 0``
(``|k| r**2 < SERIES_THRESHOLD``) truncated Taylor series in ``k r**2`` are
used so every function is continuous in ``k``.

Negative lengths follow the odd extension: ``ell`` and ``circle_curvature``
are odd, ``area_ratio`` is even.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import GeometryError

SERIES_THRESHOLD = 1e-8


def _prepare(r):
    arr = np.asarray(r, dtype=float)
    return arr, arr.ndim == 0


def _finish(out, scalar):
    return float(out) if scalar else out


def _series_mask(k, r):
    return abs(k) * r * r < SERIES_THRESHOLD


def ell(k, r):
    """``L(r) / 2 pi``: sin(sqrt(k) r)/sqrt(k), r, or sinh(sqrt(-k) r)/sqrt(-k)."""
    r, scalar = _prepare(r)
    if k > 0:
        s = math.sqrt(k)
        out = np.sin(s * r) / s
    elif k < 0:
        s = math.sqrt(-k)
        out = np.sinh(s * r) / s
    else:
        return _finish(r.copy(), scalar)
    kr2 = k * r * r
    series = r * (1.0 - kr2 / 6.0 + kr2 * kr2 / 120.0)
    out = np.where(_series_mask(k, r), series, out)
    return _finish(out, scalar)


def area_ratio(k, r):
    """``A(r) / 2 pi`` for the disk of radius ``|r|``."""
    r, scalar = _prepare(r)
    r = np.abs(r)
    if k > 0:
        s = math.sqrt(k)
        out = 2.0 * np.sin(0.5 * s * r) ** 2 / k
    elif k < 0:
        s = math.sqrt(-k)
        out = 2.0 * np.sinh(0.5 * s * r) ** 2 / (-k)
    else:
        return _finish(0.5 * r * r, scalar)
    kr2 = k * r * r
    series = 0.5 * r * r * (1.0 - kr2 / 12.0 + kr2 * kr2 / 360.0)
    out = np.where(_series_mask(k, r), series, out)
    return _finish(out, scalar)


def ell_c(k, r):
    """``ell(r) * c(r) = 1 - k a(r)``: cos(sqrt(k) r), 1 or cosh(sqrt(-k) r)."""
    r, scalar = _prepare(r)
    if k > 0:
        out = np.cos(math.sqrt(k) * r)
    elif k < 0:
        out = np.cosh(math.sqrt(-k) * r)
    else:
        out = np.ones_like(r)
    return _finish(out, scalar)


def circle_curvature(k, r):
    """Geodesic curvature ``c(r)`` of the circle of (signed) radius ``r``.

    Raises ``GeometryError('POLE')`` at ``r = 0`` and, on the sphere, at
    multiples of ``pi / sqrt(k)``.
    """
    r, scalar = _prepare(r)
    if np.any(r == 0.0):
        raise GeometryError("POLE", "circle_curvature is singular at r = 0")
    if k > 0:
        s = math.sqrt(k)
        sn = np.sin(s * r)
        if np.any(np.abs(sn) < 1e-15):
            raise GeometryError("POLE", "circle_curvature is singular at multiples of pi/sqrt(k)")
        out = s * np.cos(s * r) / sn
    elif k < 0:
        s = math.sqrt(-k)
        out = s / np.tanh(s * r)
    else:
        return _finish(1.0 / r, scalar)
    kr2 = k * r * r
    series = 1.0 / r - k * r / 3.0 - k * kr2 * r / 45.0
    out = np.where(_series_mask(k, r), series, out)
    return _finish(out, scalar)


def tan_k(k, r):
    """``1 / c(r)``: tan(sqrt(k) r)/sqrt(k), r or tanh(sqrt(-k) r)/sqrt(-k).

    This is also the chart radius of a point at intrinsic distance ``r`` from
    the chart centre in the projective charts used by ``models``.
    """
    r, scalar = _prepare(r)
    if k > 0:
        s = math.sqrt(k)
        out = np.tan(s * r) / s
    elif k < 0:
        s = math.sqrt(-k)
        out = np.tanh(s * r) / s
    else:
        return _finish(r.copy(), scalar)
    kr2 = k * r * r
    series = r * (1.0 + kr2 / 3.0 + 2.0 * kr2 * kr2 / 15.0)
    out = np.where(_series_mask(k, r), series, out)
    return _finish(out, scalar)


def arctan_k(k, y):
    """Inverse of :func:`tan_k` (intrinsic radius of a chart radius)."""
    y, scalar = _prepare(y)
    if k > 0:
        s = math.sqrt(k)
        out = np.arctan(s * y) / s
    elif k < 0:
        s = math.sqrt(-k)
        if np.any(np.abs(s * y) >= 1.0):
            raise GeometryError("OUTSIDE_CHART", "chart radius beyond the ideal boundary")
        out = np.arctanh(s * y) / s
    else:
        return _finish(y.copy(), scalar)
    ky2 = k * y * y
    series = y * (1.0 - ky2 / 3.0 + ky2 * ky2 / 5.0)
    out = np.where(_series_mask(k, y), series, out)
    return _finish(out, scalar)


def arcell(k, y):
    """Inverse of :func:`ell` on its monotone branch."""
    y, scalar = _prepare(y)
    if k > 0:
        s = math.sqrt(k)
        if np.any(np.abs(s * y) > 1.0 + 1e-15):
            raise GeometryError("DOMAIN", "ell(r) exceeds 1/sqrt(k)")
        out = np.arcsin(np.clip(s * y, -1.0, 1.0)) / s
    elif k < 0:
        s = math.sqrt(-k)
        out = np.arcsinh(s * y) / s
    else:
        return _finish(y.copy(), scalar)
    ky2 = k * y * y
    series = y * (1.0 + ky2 / 6.0 + 3.0 * ky2 * ky2 / 40.0)
    out = np.where(_series_mask(k, y), series, out)
    return _finish(out, scalar)


def _quarter_limit(k):
    return math.pi / (2.0 * math.sqrt(k)) if k > 0 else math.inf


def hypotenuse(k, a, b):
    """Hypotenuse of the right triangle with legs ``a`` and ``b``.

    Solves ``ell(c) c(c) = ell(a) c(a) ell(b) c(b)`` in closed form using
    half-angle products, which keeps full relative accuracy for short legs.
    """
    if a < 0 or b < 0:
        raise GeometryError("DOMAIN", "legs must be non-negative")
    if k > 0:
        if max(a, b) >= _quarter_limit(k):
            raise GeometryError("DOMAIN", "spherical legs must be shorter than pi/(2 sqrt(k))")
        s = math.sqrt(k)
        one_minus_cos = 2 * math.sin(0.5 * s * a) ** 2 + math.cos(s * a) * 2 * math.sin(0.5 * s * b) ** 2
        return 2.0 * math.asin(math.sqrt(0.5 * one_minus_cos)) / s
    if k < 0:
        s = math.sqrt(-k)
        cosh_minus_one = (2 * math.sinh(0.5 * s * a) ** 2
                          + math.cosh(s * a) * 2 * math.sinh(0.5 * s * b) ** 2)
        return 2.0 * math.asinh(math.sqrt(0.5 * cosh_minus_one)) / s
    return math.hypot(a, b)


@dataclass(frozen=True)
class RightTriangle:
    """Right triangle with legs ``leg_a``, ``leg_b`` opposite ``angle_alpha``,
    ``angle_beta`` and hypotenuse ``hyp_c``; the right angle is opposite ``hyp_c``."""

    leg_a: float
    leg_b: float
    hyp_c: float
    angle_alpha: float
    angle_beta: float


def solve_right_triangle(k, hyp_c, angle_alpha):
    """Right triangle from its hypotenuse and one acute angle.

    ``ell(a) = ell(c) sin(alpha)`` fixes the leg opposite ``alpha``;
    ``tan_k(b) = tan_k(c) cos(alpha)`` the adjacent one.  ``alpha`` equal to 0
    or pi/2 yields a collapsed triangle rather than an error.
    """
    if not 0.0 <= angle_alpha <= math.pi / 2:
        raise GeometryError("DOMAIN", "angle_alpha must lie in [0, pi/2]")
    if hyp_c <= 0 or hyp_c >= _quarter_limit(k):
        raise GeometryError("DOMAIN", f"hypotenuse {hyp_c} invalid for k={k}")
    sin_a = 1.0 if angle_alpha == math.pi / 2 else math.sin(angle_alpha)
    cos_a = 0.0 if angle_alpha == math.pi / 2 else math.cos(angle_alpha)
    leg_a = arcell(k, ell(k, hyp_c) * sin_a)
    leg_b = arctan_k(k, tan_k(k, hyp_c) * cos_a)
    beta = math.atan2(ell(k, leg_b) / ell(k, hyp_c), tan_k(k, leg_a) / tan_k(k, hyp_c))
    return RightTriangle(leg_a, leg_b, hyp_c, angle_alpha, beta)


def angle_of_parallelism(k, a):
    """Angle of parallelism for distance ``a`` in the hyperbolic plane (k < 0)."""
    if k >= 0:
        raise GeometryError("DOMAIN", "angle of parallelism needs k < 0")
    a, scalar = _prepare(a)
    if np.any(a < 0):
        raise GeometryError("DOMAIN", "distance must be non-negative")
    out = np.arctan2(1.0, math.sqrt(-k) * ell(k, a))
    return _finish(out, scalar)


def law_of_cosines_angle(k, a, b, c):
    """Angle opposite side ``c`` in the triangle with sides ``a, b, c``.

    Uses ``k cos(gamma) = (ell c(c) - ell c(a) ell c(b)) / (ell(a) ell(b))``
    rewritten with ``ell c = 1 - k a(.)`` so that it stays finite at ``k = 0``
    (where it is the Euclidean law of cosines).
    """
    aa, ab, ac = area_ratio(k, a), area_ratio(k, b), area_ratio(k, c)
    cos_g = (aa + ab - ac - k * aa * ab) / (ell(k, a) * ell(k, b))
    return float(np.arccos(np.clip(cos_g, -1.0, 1.0)))


def second_law_of_cosines(alpha, beta, gamma):
    """``ell(b) c(b)`` from the three angles (angle form of the law of cosines)."""
    return (math.cos(beta) + math.cos(alpha) * math.cos(gamma)) / (math.sin(alpha) * math.sin(gamma))
