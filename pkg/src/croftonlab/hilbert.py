"""Hilbert geometry of a planar convex domain.

The domain boundary is a convex polygon or a smooth strictly convex curve in
the Euclidean plane.  Besides the metric itself this module carries the
vertex pseudometric of a polygon domain, the perimeter of a convex body as an
integral over the boundary of the domain, and a Crofton-type line measure
with density ``(1/2) kappa csc^2(psi) dpsi ds`` on oriented lines.

Lines through the boundary point ``R`` are parameterised by the
counterclockwise angle ``psi in (0, pi)`` from the boundary tangent at ``R``.
Since ``kappa ds = dphi`` and ``csc^2(psi) dpsi = -d(cot psi)``, the density
is ``(1/2) dphi du`` in the coordinates ``(phi, u = cot psi)``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math
import os

import numpy as np

from .body import Polygon, TrigCurve, cross2, support_points, tangent_points, validate
from .errors import GeometryError
from .models import one_minus_norm2
from .quadrature import (QuadResult, bisect_many, find_root_monotone, integrate_adaptive,
                         integrate_periodic)

TWO_PI = 2.0 * math.pi
INTERIOR_EPS = 1e-12
MC_CHUNK = 1 << 16


class HilbertDomain:
    """Bounded convex domain carrying the Hilbert metric.

    Parameters
    ----------
    boundary : Polygon or SmoothCurve
        Counterclockwise, strictly convex boundary in Euclidean coordinates.
    """

    def __init__(self, boundary):
        validate(boundary, 0.0)
        self.boundary = boundary
        if isinstance(boundary, Polygon):
            self.regularity = "polygon"
            v = boundary.vertices
            e = np.roll(v, -1, axis=0) - v
            n = np.stack([e[:, 1], -e[:, 0]], axis=-1)
            self._normals = n / np.hypot(n[:, 0], n[:, 1])[:, None]
            self._normal_angles = np.arctan2(self._normals[:, 1], self._normals[:, 0])
        else:
            self.regularity = "smooth-positive-curvature"
            if np.any(boundary.chart_curvature(TWO_PI * np.arange(1024) / 1024) <= 0):
                raise GeometryError("NON_CONVEX", "smooth Hilbert domains need positive curvature")
        self._ellipse = None
        if isinstance(boundary, TrigCurve) and boundary.is_ellipse:
            c, u = boundary.ellipse_frame()
            self._ellipse = (c, u, np.linalg.inv(u))

    def __repr__(self):
        return f"HilbertDomain({self.boundary!r})"

    @classmethod
    def unit_disk(cls):
        return cls(TrigCurve.circle([0.0, 0.0], 1.0))

    @classmethod
    def square(cls, half=1.0):
        return cls(Polygon([[-half, -half], [half, -half], [half, half], [-half, half]]))

    # boundary queries --------------------------------------------------

    def slack(self, points):
        """Positive inside; for polygons the distance to the nearest side line."""
        p = np.asarray(points, dtype=float)
        if self.regularity == "polygon":
            v = self.boundary.vertices
            return np.min(np.einsum("ij,...ij->...i", self._normals, v - p[..., None, :]), axis=-1)
        if self._ellipse is not None:
            c, _, inv = self._ellipse
            y = (p - c) @ inv.T
            return one_minus_norm2(y)
        # generic smooth boundary: chart winding test against a fine polygon
        pts = self.boundary.sample(4096)
        e = np.roll(pts, -1, axis=0) - pts
        d = p[..., None, :] - pts
        return np.min(cross2(e, d) / np.hypot(e[:, 0], e[:, 1]), axis=-1)

    def check_interior(self, points):
        if np.any(~(self.slack(points) > INTERIOR_EPS)):
            raise GeometryError("OUTSIDE_DOMAIN", "point on or outside the Hilbert domain")

    def ray_exit(self, start, direction):
        """Exit parameter ``tau > 0`` of the rays ``start + tau direction``.

        Returns ``(tau, phi)`` where ``phi`` is the outward normal angle of the
        boundary at the exit point.
        """
        s = np.atleast_2d(np.asarray(start, dtype=float))
        d = np.atleast_2d(np.asarray(direction, dtype=float))
        s, d = np.broadcast_arrays(s, d)
        if self.regularity == "polygon":
            v = self.boundary.vertices
            num = np.einsum("ij,...ij->...i", self._normals, v - s[..., None, :])
            den = d @ self._normals.T
            with np.errstate(divide="ignore", invalid="ignore"):
                tau = np.where(den > 0, num / den, np.inf)
            j = np.argmin(tau, axis=-1)
            return np.take_along_axis(tau, j[..., None], -1)[..., 0], self._normal_angles[j]
        if self._ellipse is not None:
            c, u, inv = self._ellipse
            y = (s - c) @ inv.T
            w = d @ inv.T
            a = np.sum(w * w, axis=-1)
            b = np.sum(y * w, axis=-1)
            cq = -one_minus_norm2(y)
            root = np.sqrt(b * b - a * cq)
            tau = np.where(b > 0, -cq / (b + root), (root - b) / a)
            yy = y + tau[..., None] * w
            t = np.arctan2(yy[..., 1], yy[..., 0])
            return tau, self.boundary.normal_angle(t)
        return self._smooth_exit(s, d)

    def _smooth_exit(self, s, d):
        body = self.boundary
        grid = 1024
        t = TWO_PI * np.arange(grid) / grid
        pts = body.point(t)
        f = cross2(d[:, None, :], pts[None, :, :] - s[:, None, :])
        ahead = np.sum(d[:, None, :] * (pts[None, :, :] - s[:, None, :]), axis=-1) > 0
        # the boundary crosses the ray's line where f changes sign; keep the forward crossing
        sign = f > 0
        change = sign != np.roll(sign, -1, axis=1)
        pick = change & (ahead | np.roll(ahead, -1, axis=1))
        j = np.argmax(pick, axis=1)
        step = TWO_PI / grid

        def g(tt):
            return cross2(d, body.point(tt) - s)

        tt = bisect_many(g, t[j], t[j] + step, iterations=56)
        hit = body.point(tt)
        tau = np.sum((hit - s) * d, axis=-1) / np.sum(d * d, axis=-1)
        return tau, body.normal_angle(tt)

    def support_point(self, phi):
        """Boundary point ``R(phi)`` with outward normal angle ``phi``.

        Returns ``(R, nonunique)``; on a polygon side the midpoint is returned
        and ``nonunique`` is set.
        """
        phi = np.asarray(phi, dtype=float)
        if self._ellipse is not None:
            c, u, _ = self._ellipse
            n = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
            m = n @ u
            t = np.arctan2(m[..., 1], m[..., 0])
            return self.boundary.point(t), np.zeros(phi.shape, dtype=bool)
        _, contact, _, edge = support_points(self.boundary, phi)
        return contact, edge

    def curvature(self, t):
        return self.boundary.chart_curvature(t)

    def perimeter(self):
        if self.regularity == "polygon":
            v = self.boundary.vertices
            return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))
        return integrate_periodic(lambda t: np.hypot(*self.boundary.d1(t).T), tol=1e-13).value

    def parameter_at_arclength(self, s):
        """Curve parameter at Euclidean arclength ``s`` from parameter 0."""
        total = self.perimeter()
        s = float(s) % total

        def arc(t):
            if t <= 0:
                return 0.0
            return integrate_adaptive(lambda u: np.hypot(*self.boundary.d1(u).T), 0.0, t, tol=1e-13).value

        return find_root_monotone(lambda t: arc(t) - s, 0.0, TWO_PI, tol=1e-14)


def hilbert_distance(domain, p, q):
    """Hilbert distance ``(1/2) log((AQ/AP)(BP/BQ))`` (broadcasting over points).

    ``A`` and ``B`` are the chord ends in the order ``A P Q B``.  With
    ``a = AP/PQ`` and ``b = QB/PQ`` found by exact ray exits from ``P`` and
    ``Q`` the value is ``(log1p(1/a) + log1p(1/b)) / 2``.

    Examples
    --------
    >>> round(hilbert_distance(HilbertDomain.square(), [0, 0], [0.5, 0]), 12)
    0.549306144334
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    scalar = p.ndim == 1 and q.ndim == 1
    p2, q2 = np.broadcast_arrays(np.atleast_2d(p), np.atleast_2d(q))
    domain.check_interior(p2)
    domain.check_interior(q2)
    d = q2 - p2
    same = np.all(d == 0.0, axis=-1)
    d = np.where(same[:, None], 1.0, d)
    a, _ = domain.ray_exit(p2, -d)
    b, _ = domain.ray_exit(q2, d)
    out = np.where(same, 0.0, 0.5 * (np.log1p(1.0 / a) + np.log1p(1.0 / b)))
    return float(out[0]) if scalar else out


def _homogeneous(p):
    return np.array([p[0], p[1], 1.0])


def vertex_pseudometric(c, side_v, side_w, p, q):
    """Projective pseudometric of the angle at ``c`` bounded by lines ``side_v``, ``side_w``.

    Evaluated as the dual cross ratio of the four concurrent lines
    ``V, W, CP, CQ``, i.e. ``(1/2) |log((V.P / V.Q)(W.Q / W.P))|`` with line
    and point homogeneous coordinates.  ``c`` is only used for validation.
    """
    v = side_v.homogeneous()
    w = side_w.homogeneous()
    for line in (v, w):
        if abs(line @ _homogeneous(c)) > 1e-9 * (1.0 + np.hypot(*c)):
            raise GeometryError("BAD_INPUT", "vertex is not on both side lines")
    hp, hq = _homogeneous(p), _homogeneous(q)
    vp, vq, wp, wq = v @ hp, v @ hq, w @ hp, w @ hq
    if min(abs(vp), abs(vq), abs(wp), abs(wq)) <= 1e-15:
        raise GeometryError("BAD_INPUT", "point lies on a side of the angle")
    ratio = (vp / vq) * (wq / wp)
    if ratio <= 0:
        raise GeometryError("BAD_INPUT", "points are not inside the same angle")
    return 0.5 * abs(math.log(ratio))


def _polygon_vertex_terms(domain, p, q):
    """Per-vertex pseudometrics and the side of line PQ each vertex is on."""
    v = domain.boundary.vertices
    n = domain._normals
    off = np.einsum("ij,ij->i", n, v)
    lines = np.concatenate([n, -off[:, None]], axis=1)
    hp, hq = np.append(p, 1.0), np.append(q, 1.0)
    lp, lq = lines @ hp, lines @ hq
    # the angle at vertex i is bounded by side i-1 and side i
    prev = np.roll(np.arange(len(v)), 1)
    ratio = (lp[prev] / lq[prev]) * (lq / lp)
    d = 0.5 * np.abs(np.log(ratio))
    side = np.sign(cross2(q - p, v - p))
    return d, side


def discrete_cauchy_distance(domain, p, q, one_sided=None):
    """Hilbert distance of a polygon domain as a sum of vertex pseudometrics.

    ``one_sided=None`` returns half the sum over all vertices.  With
    ``one_sided=+1`` (``-1``) only the vertices strictly to the left (right)
    of the line ``PQ`` are summed, which already gives the distance.
    """
    if domain.regularity != "polygon":
        raise GeometryError("BAD_INPUT", "discrete Cauchy sums need a polygon domain")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    domain.check_interior(np.stack([p, q]))
    if np.array_equal(p, q):
        return 0.0
    d, side = _polygon_vertex_terms(domain, p, q)
    if one_sided is None:
        return float(0.5 * math.fsum(d))
    return float(math.fsum(d[side == one_sided]))


def angle_arc_integral(alpha, beta, gamma):
    """Closed form of ``int_0^gamma (cot(alpha - phi) - cot(beta - phi)) dphi``.

    Equals ``log(sin(alpha) sin(beta - gamma) / (sin(beta) sin(alpha - gamma)))``.
    """
    if gamma == 0 or alpha == beta:
        return 0.0
    sines = (math.sin(alpha), math.sin(beta), math.sin(alpha - gamma), math.sin(beta - gamma))
    if min(sines) <= 0:
        raise GeometryError("DOMAIN", "angle_arc_integral needs sin(alpha), sin(beta), "
                                      "sin(alpha - gamma), sin(beta - gamma) > 0")
    sa, sb, sag, sbg = sines
    return math.log((sa * sbg) / (sb * sag))


@dataclass(frozen=True)
class PsiAngles:
    psi1: float
    psi2: float
    nonunique: bool = False


def _psi_batch(domain, body, phi):
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    r, nonunique = domain.support_point(phi)
    psi1, psi2, _, _ = tangent_points(body, r, phi + 0.5 * math.pi)
    return psi1, psi2, nonunique


def psi_angles(domain, body, phi):
    """Extreme angles subtended by ``body`` at the boundary point ``R(phi)``."""
    _check_inside(domain, body)
    psi1, psi2, nonunique = _psi_batch(domain, body, phi)
    return PsiAngles(float(psi1[0]), float(psi2[0]), bool(nonunique[0]))


def _body_points(body):
    return body.vertices if isinstance(body, Polygon) else body.sample(1024)


def _check_inside(domain, body):
    domain.check_interior(_body_points(body))


def _kink_angles(domain, body):
    """Normal angles where ``R(phi)`` crosses the extension of a side of ``body``.

    There the extreme contact vertex switches and the integrand has a kink.
    """
    if not isinstance(body, Polygon):
        return np.empty(0)
    v = body.vertices
    if len(v) == 1:
        return np.empty(0)
    a = v
    b = np.roll(v, -1, axis=0)
    if len(v) == 2:
        a, b = v[:1], v[1:]
    d = b - a
    _, phi_fwd = domain.ray_exit(b, d)
    _, phi_back = domain.ray_exit(a, -d)
    return np.concatenate([phi_fwd, phi_back])


def _phi_integral(domain, integrand, tol, breakpoints=()):
    """Integral of a function of ``phi`` over one turn, split at ``breakpoints``."""
    if domain.regularity == "polygon":
        breakpoints = np.concatenate([np.asarray(breakpoints, float), domain._normal_angles])
    breakpoints = np.mod(np.asarray(breakpoints, dtype=float), TWO_PI)
    if breakpoints.size == 0:
        return integrate_periodic(integrand, tol=tol, min_nodes=64)
    start = float(np.min(breakpoints))
    inner = [start + x for x in np.sort(np.mod(breakpoints - start, TWO_PI)) if 0 < x < TWO_PI]
    return integrate_adaptive(integrand, start, start + TWO_PI, tol=tol, breakpoints=inner)


def cauchy_perimeter_hilbert(domain, body, tol=1e-10, method="auto"):
    """Hilbert perimeter of ``body`` as ``(1/2) int (cot psi1 - cot psi2) dphi``.

    ``method="closed"`` (the default for polygon domains) sums the closed-form
    angle integrals over the normal fan of each domain vertex, along which
    ``R`` is fixed and both angles decrease at unit rate.  ``"quadrature"``
    integrates over ``phi`` numerically.  A point has perimeter 0 and a segment
    ``PQ`` perimeter ``2 h(P, Q)``.
    """
    _check_inside(domain, body)
    if method == "auto":
        method = "closed" if domain.regularity == "polygon" else "quadrature"
    if method == "closed":
        if domain.regularity != "polygon":
            raise GeometryError("BAD_INPUT", "closed-form fans need a polygon domain")
        v = domain.boundary.vertices
        ang = domain._normal_angles
        start = np.roll(ang, 1)
        gamma = np.mod(ang - start, TWO_PI)
        psi1, psi2, _, _ = tangent_points(body, v, start + 0.5 * math.pi)
        terms = [angle_arc_integral(a, b, g) for a, b, g in zip(psi1, psi2, gamma)]
        return QuadResult(0.5 * math.fsum(terms), 0.0, len(v), True)
    if method != "quadrature":
        raise GeometryError("BAD_INPUT", f"unknown method {method!r}")

    def integrand(phi):
        psi1, psi2, _ = _psi_batch(domain, body, phi)
        return 0.5 * (1.0 / np.tan(psi1) - 1.0 / np.tan(psi2))

    return _phi_integral(domain, integrand, tol, _kink_angles(domain, body))


def crofton_density(domain, s, psi):
    """Oriented-line density ``(1/2) kappa(s) csc^2(psi)`` at arclength ``s``."""
    if domain.regularity == "polygon":
        raise GeometryError("BAD_INPUT", "the line density needs a smooth domain")
    if not 0.0 < psi < math.pi:
        raise GeometryError("DOMAIN", "psi must lie in (0, pi)")
    t = domain.parameter_at_arclength(s)
    kappa = float(domain.curvature(np.array(t)))
    return 0.5 * kappa / math.sin(psi) ** 2


@dataclass(frozen=True)
class MCResult:
    estimate: float
    std_error: float
    n: int
    seed: int

    def to_json(self):
        return {"estimate": self.estimate, "std_error": self.std_error, "n": self.n, "seed": self.seed}


def _worker_count():
    env = os.environ.get("CROFTONLAB_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            pass
    return cap


def _cot_bound(domain, points):
    """Bound ``M`` with ``|cot psi| < M`` for every line from the boundary to ``points``."""
    hull = Polygon(points)
    phi = TWO_PI * np.arange(2048) / 2048
    r, _ = domain.support_point(phi)
    psi1, psi2, _, _ = tangent_points(hull, r, phi + 0.5 * math.pi)
    m = np.max(np.abs(1.0 / np.tan(np.concatenate([psi1, psi2]))))
    return 1.25 * m + 0.25


def _crossings(r, direction, segments):
    """Number of polyline segments met by each line through ``r`` along ``direction``."""
    a, b = segments
    sa = cross2(direction[:, None, :], a[None, :, :] - r[:, None, :])
    sb = cross2(direction[:, None, :], b[None, :, :] - r[:, None, :])
    return np.sum((sa > 0) != (sb > 0), axis=1)


def _mc_lines(domain, rng, size, bound):
    phi = rng.uniform(0.0, TWO_PI, size)
    u = rng.uniform(-bound, bound, size)
    r, _ = domain.support_point(phi)
    psi = np.arctan2(1.0, u)
    delta = phi + 0.5 * math.pi + psi
    return r, np.stack([np.cos(delta), np.sin(delta)], axis=-1)


def _run_chunks(n_samples, seed, work):
    """Evaluate ``work(rng, size)`` on fixed chunks with per-chunk streams.

    Each chunk draws from ``SeedSequence([seed, chunk])``, so results do not
    depend on how chunks are distributed over worker threads.
    """
    sizes = [min(MC_CHUNK, n_samples - i) for i in range(0, n_samples, MC_CHUNK)]

    def job(idx):
        rng = np.random.default_rng(np.random.SeedSequence([seed, idx]))
        return work(rng, sizes[idx])

    workers = min(_worker_count(), len(sizes))
    if workers <= 1:
        return [job(i) for i in range(len(sizes))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, range(len(sizes))))


def _integer_stats(results, scale, n_samples, seed):
    total = sum(int(s) for s, _ in results)
    total_sq = sum(int(s2) for _, s2 in results)
    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0)
    err = scale * math.sqrt(var / n_samples) if n_samples > 1 else 0.0
    return MCResult(scale * mean, err, n_samples, seed)


def crofton_length_mc(domain, curve, n_samples=10**6, seed=0):
    """Monte Carlo Hilbert length of a polyline through the line density.

    Lines are drawn uniformly in ``(phi, u = cot psi)`` over
    ``[0, 2 pi) x [-M, M]``, a box that contains every line meeting the curve;
    the length is ``(1/4) int int n dphi du = pi M E[n]``.
    """
    if domain.regularity == "polygon":
        raise GeometryError("BAD_INPUT", "the line density needs a smooth domain")
    pts = np.asarray(curve, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise GeometryError("BAD_INPUT", "curve must be a polyline of at least two points")
    if n_samples < 1:
        raise GeometryError("BAD_INPUT", "n_samples must be positive")
    domain.check_interior(pts)
    keep = np.any(pts[1:] != pts[:-1], axis=1)
    a, b = pts[:-1][keep], pts[1:][keep]
    if len(a) == 0:
        return MCResult(0.0, 0.0, int(n_samples), int(seed))
    bound = _cot_bound(domain, np.concatenate([a, b]))

    def work(rng, size):
        r, direction = _mc_lines(domain, rng, size, bound)
        n = _crossings(r, direction, (a, b))
        return int(n.sum()), int((n * n).sum())

    return _integer_stats(_run_chunks(int(n_samples), int(seed), work),
                          math.pi * bound, int(n_samples), int(seed))


def oriented_distance_mc(domain, p, q, n_samples=10**6, seed=0):
    """Half the density-measure of oriented lines cutting the oriented segment ``PQ``.

    An oriented line cuts ``PQ`` when it meets the segment and its direction
    lies less than ``pi`` counterclockwise from ``Q - P``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    domain.check_interior(np.stack([p, q]))
    if np.array_equal(p, q):
        return MCResult(0.0, 0.0, int(n_samples), int(seed))
    bound = _cot_bound(domain, np.stack([p, q]))
    pq = q - p

    def work(rng, size):
        r, direction = _mc_lines(domain, rng, size, bound)
        hit = _crossings(r, direction, (p[None], q[None])) > 0
        hit &= cross2(pq[None, :], direction) > 0
        n = hit.astype(np.int64)
        return int(n.sum()), int(n.sum())

    # (1/2) * (1/2) dphi du over a box of area 4 pi M
    return _integer_stats(_run_chunks(int(n_samples), int(seed), work),
                          math.pi * bound, int(n_samples), int(seed))


def oriented_distance_quadrature(domain, p, q, tol=1e-10):
    """Quadrature version of :func:`oriented_distance_mc`.

    For fixed ``R(phi)`` the lines meeting ``PQ`` fill the ``u`` interval
    between the cotangents of the angles toward ``P`` and ``Q``, and all of
    them have the same orientation relative to ``PQ`` (fixed by the side of
    line ``PQ`` that ``R`` lies on).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    domain.check_interior(np.stack([p, q]))
    if np.array_equal(p, q):
        return QuadResult(0.0, 0.0, 0, True)
    seg = Polygon([p, q])
    pq = q - p

    def integrand(phi):
        r, _ = domain.support_point(phi)
        psi1, psi2, _, _ = tangent_points(seg, r, phi + 0.5 * math.pi)
        width = 1.0 / np.tan(psi1) - 1.0 / np.tan(psi2)
        # the direction from R toward the segment is positive w.r.t. PQ iff R is right of PQ
        right = cross2(pq[None, :], r - p[None, :]) < 0
        return np.where(right, 0.25 * width, 0.0)

    return _phi_integral(domain, integrand, tol, _kink_angles(domain, seg))


def hilbert_perimeter_oracle(domain, body, n=4096):
    """Hilbert perimeter of an inscribed polygon of ``body`` (``n`` vertices if smooth)."""
    if isinstance(body, Polygon):
        pts = body.vertices
    else:
        if n < 3:
            raise GeometryError("BAD_INPUT", "need at least 3 vertices")
        pts = body.point(TWO_PI * np.arange(n) / n)
    if len(pts) == 1:
        return 0.0
    if len(pts) == 2:
        return 2.0 * hilbert_distance(domain, pts[0], pts[1])
    return float(math.fsum(hilbert_distance(domain, pts, np.roll(pts, -1, axis=0))))
