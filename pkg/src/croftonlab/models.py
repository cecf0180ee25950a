"""Projective charts of the constant-curvature planes.

Every regime is drawn in a chart where geodesics are straight lines:

* ``k < 0``  Beltrami-Klein disk of radius ``1/sqrt(-k)`` (the unit disk for k = -1),
* ``k = 0``  the Euclidean plane itself,
* ``k > 0``  the gnomonic chart of the open hemisphere around the chart centre.

In all three the chart radius of a point at intrinsic distance ``rho`` from
the centre is ``tan_k(rho)`` and the polar angle is the chart polar angle.
The intrinsic metric in chart coordinates is

    ds^2 = |dx|^2 / (1 + k|x|^2) - k (x . dx)^2 / (1 + k|x|^2)^2 .

This module also carries the Poincare-disk conversion and the signed
inversive product of oriented hyperbolic lines.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import curvature as cc
from .errors import GeometryError


def disk_radius(k):
    """Radius of the chart's ideal boundary (``inf`` unless ``k < 0``)."""
    return 1.0 / math.sqrt(-k) if k < 0 else math.inf


def chart_radius(k, rho):
    """Chart radius of a point at intrinsic distance ``rho`` from the centre."""
    return cc.tan_k(k, rho)


def intrinsic_radius(k, radius):
    """Intrinsic distance from the centre of a point at chart radius ``radius``."""
    return cc.arctan_k(k, radius)


def check_in_chart(k, points, margin=0.0):
    pts = np.asarray(points, dtype=float)
    if k < 0:
        rad = np.hypot(pts[..., 0], pts[..., 1])
        if np.any(rad >= disk_radius(k) * (1.0 - margin)):
            raise GeometryError("OUTSIDE_CHART", "point on or outside the ideal boundary")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("OUTSIDE_CHART", "non-finite chart coordinates")


def one_minus_dot(p, q):
    """``1 - p.q`` with compensated products, accurate when the result is tiny."""
    p0, e0 = _two_prod(p[..., 0], q[..., 0])
    p1, e1 = _two_prod(p[..., 1], q[..., 1])
    s, es = _two_sum(p0, p1)
    r, er = _two_sum(1.0, -s)
    return r + (er - es - e0 - e1)


def one_minus_norm2(y):
    """``1 - |y|^2``, see :func:`one_minus_dot`."""
    return one_minus_dot(y, y)


def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def chart_distance(k, p, q):
    """Intrinsic distance between chart points ``p`` and ``q`` (broadcasting).

    With ``S = sqrt(|p - q|^2 + k (p x q)^2)`` and ``C = 1 + k p.q`` the distance
    is ``atan(sqrt(k) S / C)/sqrt(k)``, ``S`` or ``atanh(sqrt(-k) S / C)/sqrt(-k)``.
    The hyperbolic branch is evaluated as a logarithm of quantities free of
    cancellation so that points near the ideal boundary keep full accuracy.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    dx = p[..., 0] - q[..., 0]
    dy = p[..., 1] - q[..., 1]
    cross = p[..., 0] * q[..., 1] - p[..., 1] * q[..., 0]
    dot = p[..., 0] * q[..., 0] + p[..., 1] * q[..., 1]
    s2 = dx * dx + dy * dy + k * cross * cross
    s = np.sqrt(np.maximum(s2, 0.0))
    if k == 0:
        out = s
    elif k > 0:
        rk = math.sqrt(k)
        out = np.arctan2(rk * s, 1.0 + k * dot) / rk
    else:
        rk = math.sqrt(-k)
        # in unit-disk coordinates 1 + k p.q = 1 - p'.q'; compensated near the boundary
        pu, qu = rk * p, rk * q
        c = one_minus_dot(pu, qu)
        pp = one_minus_norm2(pu)
        qq = one_minus_norm2(qu)
        if np.any(pp <= 0) or np.any(qq <= 0):
            raise GeometryError("OUTSIDE_CHART", "point on or outside the ideal boundary")
        # C^2 - k'S^2 = pp*qq, so atanh(rk S/C) = log((C + rk S)/sqrt(pp qq))
        out = np.log((c + rk * s) / np.sqrt(pp * qq)) / rk
    return float(out) if out.ndim == 0 else out


def klein_to_poincare(p):
    """Klein disk point to the Poincare disk (unit disks, k = -1)."""
    p = np.asarray(p, dtype=float)
    r2 = p[..., 0] ** 2 + p[..., 1] ** 2
    if np.any(r2 >= 1.0):
        raise GeometryError("OUTSIDE_CHART", "Klein point outside the open unit disk")
    scale = 1.0 / (1.0 + np.sqrt(1.0 - r2))
    return p * scale[..., None] if p.ndim > 1 else p * scale


def poincare_to_klein(p):
    """Poincare disk point to the Klein disk (unit disks, k = -1)."""
    p = np.asarray(p, dtype=float)
    r2 = p[..., 0] ** 2 + p[..., 1] ** 2
    if np.any(r2 >= 1.0):
        raise GeometryError("OUTSIDE_CHART", "Poincare point outside the open unit disk")
    scale = 2.0 / (1.0 + r2)
    return p * scale[..., None] if p.ndim > 1 else p * scale


def hyperbolic_distance_klein(p, q):
    """Hyperbolic distance (k = -1) between two Klein-disk points.

    Equals half the log of the cross ratio ``(AQ/AP)(BP/BQ)`` where ``A``, ``B``
    are the ends of the chord through ``p`` and ``q``; evaluated through the
    closed form ``log((1 - p.q + S) / sqrt((1 - |p|^2)(1 - |q|^2)))``.
    """
    check_in_chart(-1.0, np.atleast_2d(p))
    check_in_chart(-1.0, np.atleast_2d(q))
    return chart_distance(-1.0, p, q)


@dataclass(frozen=True)
class IdealPoint:
    """Point ``(cos phi, sin phi)`` on the ideal boundary of the unit Klein disk."""

    phi: float

    def point(self, k=-1.0):
        return disk_radius(k) * np.array([math.cos(self.phi), math.sin(self.phi)])


@dataclass(frozen=True)
class ChartLine:
    """Oriented chart line ``{a x + b y + c = 0}`` with ``a^2 + b^2 = 1``.

    The positive side is the one the normal ``orientation * (a, b)`` points into.
    """

    a: float
    b: float
    c: float
    orientation: int = 1

    def __post_init__(self):
        norm = math.hypot(self.a, self.b)
        if norm == 0.0:
            raise GeometryError("BAD_INPUT", "line normal (a, b) must be nonzero")
        object.__setattr__(self, "a", self.a / norm)
        object.__setattr__(self, "b", self.b / norm)
        object.__setattr__(self, "c", self.c / norm)
        if self.orientation not in (1, -1):
            raise GeometryError("BAD_INPUT", "orientation must be +1 or -1")

    @classmethod
    def from_normal(cls, angle, offset):
        """Line ``{x : n . x = offset}`` with unit normal ``n`` at ``angle``; oriented along ``n``."""
        return cls(math.cos(angle), math.sin(angle), -offset, 1)

    @classmethod
    def through(cls, p, q):
        """Line through ``p`` and ``q``; its normal is ``q - p`` rotated clockwise."""
        dx, dy = q[0] - p[0], q[1] - p[1]
        a, b = dy, -dx
        return cls(a, b, -(a * p[0] + b * p[1]), 1)

    @property
    def normal(self):
        return self.orientation * np.array([self.a, self.b])

    @property
    def offset(self):
        """Signed chart distance ``n . x`` of the line along its oriented normal."""
        return -self.orientation * self.c

    def flipped(self):
        return ChartLine(self.a, self.b, self.c, -self.orientation)

    def evaluate(self, points):
        pts = np.asarray(points, dtype=float)
        return self.orientation * (self.a * pts[..., 0] + self.b * pts[..., 1] + self.c)

    def homogeneous(self):
        return np.array([self.a, self.b, self.c])


def poincare_circle(line, k=-1.0):
    """Normalised coefficients ``(A, B, C, D)`` of the Poincare representative.

    The Klein chord ``line`` (rescaled to the unit disk) becomes the generalised
    circle ``A|z|^2 + B x + C y + D = 0`` orthogonal to the unit circle,
    normalised by ``B^2 + C^2 - 4 A D = 1`` and signed so that the form is
    positive on the same part of the disk as the oriented chord.
    """
    c = line.c * math.sqrt(-k)
    if abs(c) >= 1.0:
        raise GeometryError("NOT_A_CHORD", "line misses the open Klein disk")
    scale = line.orientation / (2.0 * math.sqrt(1.0 - c * c))
    return scale * np.array([c, 2.0 * line.a, 2.0 * line.b, c])


def inversive_product(l1, l2, k=-1.0):
    """Signed inversive product of two oriented hyperbolic lines.

    Computed from their Poincare circles by the Mobius-invariant pairing
    ``B B' + C C' - 2 (A D' + A' D)``.  Its absolute value is the cosine of
    the angle between intersecting lines and the hyperbolic cosine of the
    distance between disjoint ones.
    """
    x1 = poincare_circle(l1, k)
    x2 = poincare_circle(l2, k)
    return float(x1[1] * x2[1] + x1[2] * x2[2] - 2.0 * (x1[0] * x2[3] + x2[0] * x1[3]))


def line_support_data(k, line):
    """Signed intrinsic distance ``r`` and foot angle ``omega`` of a chart line.

    ``omega`` is the direction of the oriented normal and ``r`` is positive
    when the line lies on that side of the centre, so that ``(r, omega)`` is
    the intrinsic support pair of any body on the negative side of ``line``.
    """
    n = line.normal
    return float(intrinsic_radius(k, line.offset)), math.atan2(n[1], n[0])


def _scale_matrix(k):
    s = math.sqrt(abs(k))
    return np.diag([s, s, 1.0]), np.diag([1.0 / s, 1.0 / s, 1.0])


def isometry_to_centre(k, origin):
    """Projective 3x3 matrix of an isometry taking chart point ``origin`` to 0.

    Translation for ``k = 0``, a Lorentz boost for ``k < 0`` and a rotation of
    the sphere for ``k > 0``; all act linearly on ``(x, y, 1)``.
    """
    o = np.asarray(origin, dtype=float)
    if k == 0:
        m = np.eye(3)
        m[:2, 2] = -o
        return m
    norm = math.hypot(*o)
    if norm == 0.0:
        return np.eye(3)
    scale, unscale = _scale_matrix(k)
    v = math.sqrt(abs(k)) * o
    vn = math.sqrt(abs(k)) * norm
    u = v / vn
    m = np.eye(3)
    if k < 0:
        if vn >= 1.0:
            raise GeometryError("OUTSIDE_CHART", "origin outside the Klein disk")
        gamma = 1.0 / math.sqrt(1.0 - vn * vn)
        m[:2, :2] += (gamma - 1.0) * np.outer(u, u)
        m[:2, 2] = -gamma * v
        m[2, :2] = -gamma * v
        m[2, 2] = gamma
    else:
        cos_b = 1.0 / math.sqrt(1.0 + vn * vn)
        sin_b = vn * cos_b
        m[:2, :2] += (cos_b - 1.0) * np.outer(u, u)
        m[:2, 2] = -sin_b * u
        m[2, :2] = sin_b * u
        m[2, 2] = cos_b
    return unscale @ m @ scale


def apply_projective(m, points):
    """Apply a 3x3 projective matrix to chart points of shape ``(..., 2)``."""
    pts = np.asarray(points, dtype=float)
    hom = pts @ m[:, :2].T + m[:, 2]
    return hom[..., :2] / hom[..., 2:3]
