"""Perimeter formulas for convex bodies in the constant-curvature planes.

Every formula is evaluated from chart data through the frames of
:mod:`croftonlab.frames`; the arclength integral of :func:`arclength_perimeter`
is the independent oracle.

Formulas (``k`` the curvature, ``ell``, ``a``, ``c`` the unified functions):

* Minkowski       ``P = int ell(rho)^2 kappa_g dtheta + k int a(rho) ds`` (any origin),
* unified Cauchy  ``P = int ell(r) domega``,
* polar Cauchy    ``P = int ell(rho)^2 (domega/ds) dtheta`` (origin inside),
* projective      ``P = (1/2) int w dphi = int h dphi`` (``k < 0``).
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import curvature as cc
from .body import Polygon, TrigCurve, contains, cross2, wrap_angle
from .errors import GeometryError
from .frames import (_frame_arrays, _polar, arclength_quad, ideal_psi, metric_speed, support_frames,
                     tangent_frames)
from .hilbert import HilbertDomain, _kink_angles
from .models import disk_radius, isometry_to_centre
from .quadrature import central_diff, integrate_adaptive, integrate_periodic

TWO_PI = 2.0 * math.pi


@dataclass
class PerimeterReport:
    method: str
    value: float
    error_estimate: float
    node_count: int
    converged: bool = True
    diagnostics: dict = field(default_factory=dict)

    def as_row(self):
        return {"method": self.method, "value": self.value, "error_estimate": self.error_estimate,
                "evaluations": self.node_count, "converged": self.converged}


def _report(method, result, **diagnostics):
    return PerimeterReport(method, float(result.value), float(result.error_estimate),
                           int(result.evaluations), bool(result.converged), diagnostics)


def _smooth_only(body, name):
    if isinstance(body, Polygon):
        raise GeometryError("BAD_INPUT", f"{name} needs a smooth boundary")


def recentre(k, body, origin):
    """Body expressed in a chart centred at ``origin`` (a chart isometry)."""
    if origin is None or not np.any(np.asarray(origin, dtype=float)):
        return body
    return body.transformed(isometry_to_centre(k, origin))


def arclength_report(k, body, tol=1e-12):
    return _report("arclength", arclength_quad(body, k, tol=tol))


# -- Minkowski --------------------------------------------------------------

def minkowski_integrand(k, body, t):
    """``ell(rho)^2 kappa_g dtheta/dt + k a(rho) ds/dt`` at parameters ``t``."""
    p, d1, d2 = body.point(t), body.d1(t), body.d2(t)
    rho, _, ell, _, lth1 = _polar(k, p, d1)
    _, _, _, speed, kappa = _frame_arrays(k, p, d1, d2)
    return ell * lth1 * kappa + k * cc.area_ratio(k, rho) * speed


def minkowski_perimeter(k, body, origin=None, tol=1e-10):
    """Minkowski perimeter of a closed C^2 curve with respect to ``origin``.

    Convexity is not needed.  The curve must stay ``1e-9`` away from the
    origin (``NEAR_POLE``), where polar coordinates degenerate.

    Examples
    --------
    >>> from croftonlab.body import TrigCurve
    >>> r = minkowski_perimeter(0.0, TrigCurve.circle([3.0, 0.0], 2.0))
    >>> round(r.value / math.pi, 9)
    4.0
    """
    if isinstance(body, Polygon):
        return minkowski_perimeter_polygon(k, body, origin, tol)
    curve = recentre(k, body, origin)
    res = integrate_periodic(lambda t: minkowski_integrand(k, curve, t), tol=tol, min_nodes=64)
    return _report("minkowski", res)


def _side_alpha(k, point, direction):
    _, _, _, rho1, lth1 = _polar(k, point, direction)
    return np.arctan2(-rho1, lth1)


def minkowski_perimeter_polygon(k, polygon, origin=None, tol=1e-10):
    """Minkowski perimeter of a geodesic polygon.

    Sides have ``kappa_g = 0``; the corners contribute
    ``ell(rho_i) (sin alpha_i^+ - sin alpha_i^-)`` with the one-sided angles
    of the outgoing and incoming sides.
    """
    poly = recentre(k, polygon, origin)
    v = poly.vertices
    nxt = np.roll(v, -1, axis=0)
    edges = nxt - v
    rho = cc.arctan_k(k, np.hypot(v[:, 0], v[:, 1]))
    # alpha at the start of each side (outgoing) and at its end (incoming at the next vertex)
    a_out = _side_alpha(k, v, edges)
    a_in = np.roll(_side_alpha(k, nxt, edges), 1)
    corners = cc.ell(k, rho) * (np.sin(a_out) - np.sin(a_in))
    total = math.fsum(corners)
    err = 0.0
    evals = 0
    if k != 0:
        for a, e in zip(v, edges):
            def f(u, a=a, e=e):
                p = a + u[:, None] * e
                rho_u = cc.arctan_k(k, np.hypot(p[:, 0], p[:, 1]))
                return k * cc.area_ratio(k, rho_u) * metric_speed(k, p, np.broadcast_to(e, p.shape))
            res = integrate_adaptive(f, 0.0, 1.0, tol=tol / len(v))
            total += res.value
            err += res.error_estimate
            evals += res.evaluations
    return PerimeterReport("minkowski", total, err, evals, True, {"corner_sum": math.fsum(corners)})


# -- unified Cauchy ---------------------------------------------------------

def cauchy_perimeter_unified(k, body, tol=1e-10):
    """``int ell(r(omega)) domega`` over the foot directions of the support lines.

    The omega-path solves the support contact for each node.  For smooth
    bodies a second path integrates ``ell(r) domega/dt`` over the boundary
    parameter; its value is reported in ``diagnostics['t_path']``.
    """
    if isinstance(body, Polygon):
        breaks = np.mod(np.arctan2(*(_edge_normals(body)[:, ::-1].T)), TWO_PI)

        def f(om):
            return cc.ell(k, support_frames(body, k, om).r)

        start = float(breaks.min())
        inner = [start + x for x in np.sort(np.mod(breaks - start, TWO_PI)) if 0 < x < TWO_PI]
        res = integrate_adaptive(f, start, start + TWO_PI, tol=tol, breakpoints=inner)
        return _report("cauchy-omega", res)
    res = integrate_periodic(lambda om: cc.ell(k, support_frames(body, k, om).r), tol=tol, min_nodes=64)
    t_path = integrate_periodic(lambda t: _cauchy_t_integrand(k, body, t), tol=tol, min_nodes=64)
    return _report("cauchy-omega", res, t_path=t_path.value)


def _edge_normals(poly):
    e = np.roll(poly.vertices, -1, axis=0) - poly.vertices
    return np.stack([e[:, 1], -e[:, 0]], axis=-1)


def _omega_rate(body, t):
    """``d omega / dt``: rate of the chart normal angle."""
    d1, d2 = body.d1(t), body.d2(t)
    return cross2(d1, d2) / np.sum(d1 * d1, axis=-1)


def _cauchy_t_integrand(k, body, t):
    return cc.ell(k, tangent_frames(body, k, t).r) * _omega_rate(body, t)


# -- projective Cauchy (k < 0) ------------------------------------------------

def _require_hyperbolic(k):
    if k >= 0:
        raise GeometryError("BAD_INPUT", "projective Cauchy formulas need k < 0")


def _phi_quadrature(k, body, integrand, tol):
    if isinstance(body, Polygon):
        disk = HilbertDomain(TrigCurve.circle([0.0, 0.0], disk_radius(k)))
        breaks = np.mod(_kink_angles(disk, body), TWO_PI)
        if breaks.size:
            start = float(breaks.min())
            inner = [start + x for x in np.sort(np.mod(breaks - start, TWO_PI)) if 0 < x < TWO_PI]
            return integrate_adaptive(integrand, start, start + TWO_PI, tol=tol, breakpoints=inner)
    return integrate_periodic(integrand, tol=tol, min_nodes=64)


def projective_cauchy_w(body, k=-1.0, tol=1e-10):
    """``(1/2) int w(phi) dphi`` with ``w`` the projected width seen from ``R(phi)``."""
    _require_hyperbolic(k)
    radius = disk_radius(k)

    def f(phi):
        psi1, psi2, _, _ = ideal_psi(body, k, phi)
        return 0.5 * radius * (1.0 / np.tan(psi1) - 1.0 / np.tan(psi2))

    return _report("projective-w", _phi_quadrature(k, body, f, tol))


def projective_cauchy_h(body, k=-1.0, tol=1e-10):
    """``int h(phi) dphi`` with ``h = D cot psi1`` from the right support line.

    The intrinsic form ``ell(r)`` of the same integrand, with ``r`` the signed
    distance to the right support line, is compared on every node; the
    largest gap is ``diagnostics['max_pointwise_gap']``.
    """
    _require_hyperbolic(k)
    radius = disk_radius(k)
    gap = [0.0]

    def f(phi):
        psi1, _, p1, _ = ideal_psi(body, k, phi)
        h = radius / np.tan(psi1)
        src = radius * np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        d = p1 - src
        n = np.stack([d[:, 1], -d[:, 0]], axis=-1)
        n /= np.hypot(n[:, 0], n[:, 1])[:, None]
        r = cc.arctan_k(k, np.sum(n * src, axis=-1))
        gap[0] = max(gap[0], float(np.max(np.abs(cc.ell(k, r) - h))))
        return h

    res = _phi_quadrature(k, body, f, tol)
    return _report("projective-h", res, max_pointwise_gap=gap[0])


# -- curvature and support-function identities -------------------------------------

def kappa_from_omega(k, frame, domega_ds, both=False):
    """Geodesic curvature from ``domega/ds``.

    ``(ell(r) c(r) / ell(x) c(x)) domega/ds``, equivalently
    ``((1 - k a(r)) / (1 - k a(x))) domega/ds``.  ``both=True`` returns the
    two algebraic forms.
    """
    first = cc.ell_c(k, frame.r) / cc.ell_c(k, frame.x) * domega_ds
    second = (1.0 - k * cc.area_ratio(k, frame.r)) / (1.0 - k * cc.area_ratio(k, frame.x)) * domega_ds
    return (first, second) if both else first


def dr_domega(k, frame):
    """``dr/domega = -ell(r) c(r) / c(x)``, written with ``1/c = tan_k`` (finite at x = 0)."""
    return -cc.ell_c(k, frame.r) * cc.tan_k(k, frame.x)


def cauchy_polar_integrands(k, body, t):
    """Both polar-Cauchy integrands (per unit ``t``) at parameters ``t``."""
    fr = tangent_frames(body, k, t)
    p, d1 = body.point(t), body.d1(t)
    _, _, ell, _, lth1 = _polar(k, p, d1)
    dtheta_dt = lth1 / ell
    domega_ds = _omega_rate(body, t) / fr.speed
    first = ell ** 2 * domega_ds * dtheta_dt
    second = fr.kappa_g * ell ** 2 * (1.0 - k * cc.area_ratio(k, fr.x)) / (1.0 - k * cc.area_ratio(k, fr.r)) * dtheta_dt
    return first, second


def cauchy_polar(k, body, tol=1e-10):
    """``int ell(rho)^2 (domega/ds) dtheta`` for a smooth body containing the origin.

    The curvature form ``kappa_g ell(rho)^2 (1 - k a(x)) / (1 - k a(r))`` of the
    integrand is evaluated alongside; ``diagnostics['max_pointwise_gap']``.
    """
    _smooth_only(body, "cauchy_polar")
    if not contains(body, (0.0, 0.0)):
        raise GeometryError("DOMAIN", "cauchy_polar needs the origin inside the body")
    gap = [0.0]

    def f(t):
        a, b = cauchy_polar_integrands(k, body, t)
        gap[0] = max(gap[0], float(np.max(np.abs(a - b))))
        return a

    res = integrate_periodic(f, tol=tol, min_nodes=64)
    return _report("cauchy-polar", res, max_pointwise_gap=gap[0])


@dataclass
class MeasureRatios:
    """Ratios of the boundary measures ``ds, dtheta, domega, dphi, dphi~``.

    The ``phi`` ratios are ``nan`` unless ``k < 0``.  ``dphi_dtheta_poincare`` is
    the independent expression obtained from the Poincare-disk frame (only
    for ``k = -1``).
    """

    dtheta_ds: np.ndarray
    domega_ds: np.ndarray
    domega_dtheta: np.ndarray
    dphi_domega: np.ndarray
    dphi_dtheta: np.ndarray
    dphitilde_domega: np.ndarray
    dphi_dtheta_poincare: np.ndarray


def measure_ratios(k, body, t, frame=None):
    """Closed-form measure ratios at boundary parameters ``t`` (smooth bodies)."""
    _smooth_only(body, "measure_ratios")
    fr = frame if frame is not None else tangent_frames(body, k, np.atleast_1d(t))
    ell_rho = cc.ell(k, fr.rho)
    ell_r = cc.ell(k, fr.r)
    lc_x, lc_r = cc.ell_c(k, fr.x), cc.ell_c(k, fr.r)
    dtheta_ds = ell_r / ell_rho ** 2
    domega_ds = fr.kappa_g * lc_x / lc_r
    domega_dtheta = fr.kappa_g * (lc_x / lc_r) * (ell_rho ** 2 / ell_r)
    nan = np.full(np.shape(fr.r), np.nan)
    if k < 0:
        rk = math.sqrt(-k)
        dphi_domega = 1.0 - rk * cc.tan_k(k, fr.x)
        dphit_domega = 1.0 + rk * cc.tan_k(k, fr.x)
        dphi_dtheta = (1.0 - rk * cc.tan_k(k, fr.x)) * fr.kappa_g * (lc_x / lc_r) * (ell_rho ** 2 / ell_r)
    else:
        dphi_domega = dphit_domega = dphi_dtheta = nan
    if k == -1:
        poincare = (fr.kappa_g * (np.cosh(fr.rho) - np.sin(fr.alpha) * np.sinh(fr.rho))
                    * np.sinh(fr.rho) ** 2 / (np.cosh(fr.r) ** 2 * np.sinh(fr.r)))
    else:
        poincare = nan
    return MeasureRatios(dtheta_ds, domega_ds, domega_dtheta, dphi_domega, dphi_dtheta,
                         dphit_domega, poincare)


def measure_oracles(k, body, t, h=1e-4 * TWO_PI):
    """Central-difference versions of the measure ratios (5-point stencils in ``t``)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    speed = metric_speed(k, body.point(t), body.d1(t))

    def unwrap_diff(fn):
        base = fn(t)
        return central_diff(lambda u: base + wrap_angle(fn(u) - base), t, h)

    theta = unwrap_diff(lambda u: np.arctan2(body.point(u)[..., 1], body.point(u)[..., 0]))
    omega = unwrap_diff(lambda u: tangent_frames(body, k, u).omega)
    out = {"dtheta_ds": theta / speed, "domega_ds": omega / speed, "domega_dtheta": omega / theta}
    if k < 0:
        phi = unwrap_diff(lambda u: tangent_frames(body, k, u).phi)
        phit = unwrap_diff(lambda u: tangent_frames(body, k, u).phi_tilde)
        out.update(dphi_domega=phi / omega, dphi_dtheta=phi / theta, dphitilde_domega=phit / omega)
    return out


def arc_integrals(k, polygon, side, tol=1e-12):
    """Cauchy and Minkowski-correction integrals along one geodesic side.

    Returns ``(int ell(r) domega, int k a(rho) ds)`` over the side, both by
    quadrature in the side parameter; ``omega`` is the foot direction of the
    tangent (support) line, which is constant along a geodesic.
    """
    a, b = polygon.edge(side)
    e = b - a
    omega_of = lambda u: np.full(np.shape(u), math.atan2(-e[0], e[1]))  # noqa: E731

    def cauchy(u):
        p = a + np.asarray(u)[..., None] * e
        off = np.sum(p * np.array([math.cos(omega_of(0.0)), math.sin(omega_of(0.0))]), axis=-1)
        domega = central_diff(omega_of, u, 1e-4)
        return cc.ell(k, cc.arctan_k(k, off)) * domega

    def minkowski(u):
        p = a + u[:, None] * e
        rho = cc.arctan_k(k, np.hypot(p[:, 0], p[:, 1]))
        return k * cc.area_ratio(k, rho) * metric_speed(k, p, np.broadcast_to(e, p.shape))

    return (integrate_adaptive(cauchy, 0.0, 1.0, tol=tol).value,
            integrate_adaptive(minkowski, 0.0, 1.0, tol=tol).value)


# -- dispatch -----------------------------------------------------------------------

METHODS = ("arclength", "minkowski", "cauchy-omega", "cauchy-polar", "projective-w", "projective-h")


def applicable_methods(k, body):
    methods = ["arclength", "minkowski", "cauchy-omega"]
    if not isinstance(body, Polygon) and contains(body, (0.0, 0.0)):
        methods.append("cauchy-polar")
    if k < 0:
        methods += ["projective-w", "projective-h"]
    return methods


def perimeter(k, body, method, tol=1e-10, origin=None):
    """Run one perimeter method by name (see :data:`METHODS`)."""
    if method == "arclength":
        return arclength_report(k, body)
    if method == "minkowski":
        return minkowski_perimeter(k, body, origin, tol)
    if method == "cauchy-omega":
        return cauchy_perimeter_unified(k, body, tol)
    if method == "cauchy-polar":
        return cauchy_polar(k, body, tol)
    if method == "projective-w":
        return projective_cauchy_w(body, k, tol)
    if method == "projective-h":
        return projective_cauchy_h(body, k, tol)
    raise GeometryError("BAD_INPUT", f"unknown method {method!r}")
