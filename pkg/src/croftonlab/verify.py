"""Property suites run by ``croftonlab verify``.

Each check reports the largest deviation it observed and the threshold it
is held to; a check passes when ``deviation < threshold * threshold_scale``.
Lower-bound checks (``kind="min"``) pass when the value exceeds
``threshold / threshold_scale``.
All randomness comes from one integer seed.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import curvature as cc
from . import models
from .body import Polygon, TrigCurve, random_convex_body, validate, wrap_angle
from .frames import arclength_perimeter, support_frames, support_lines_from_ideal, tangent_frames
from .hilbert import (HilbertDomain, cauchy_perimeter_hilbert, discrete_cauchy_distance,
                      hilbert_distance, oriented_distance_quadrature)
from .perimeter import (applicable_methods, arc_integrals, dr_domega,
                        kappa_from_omega, measure_oracles, measure_ratios, minkowski_perimeter,
                        perimeter, projective_cauchy_h, projective_cauchy_w)
from .quadrature import central_diff

SUITES = ("core", "hilbert", "perimeter", "measures")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    deviation: float
    threshold: float
    passed: bool
    kind: str = "max"


# -- random inputs ------------------------------------------------------------------

def random_polygon_domain(rng, n_min=3, n_max=12):
    n = int(rng.integers(n_min, n_max + 1))
    while True:
        ang = np.sort(rng.uniform(0, 2 * math.pi, n))
        if np.max(np.diff(np.append(ang, ang[0] + 2 * math.pi))) < math.pi * 0.95:
            break
    scale = rng.uniform(0.5, 2.0, 2)
    v = np.stack([scale[0] * np.cos(ang), scale[1] * np.sin(ang)], axis=-1) + rng.normal(0, 0.2, 2)
    return HilbertDomain(Polygon(v))


def random_interior(rng, domain, size):
    """Random convex combinations of boundary points, pulled slightly inwards."""
    pts = domain.boundary.vertices if isinstance(domain.boundary, Polygon) else domain.boundary.sample(64)
    w = rng.dirichlet(np.full(len(pts), 0.3), size=size)
    centre = pts.mean(axis=0)
    return centre + 0.999 * (w @ pts - centre)


def random_disk_points(rng, size, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0, 1, size))
    th = rng.uniform(0, 2 * math.pi, size)
    return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)


# -- suites -------------------------------------------------------------------------

def _core(rng):
    out = []
    r = rng.uniform(0.05, 1.4, 200)
    for k in (-1.0, 0.0, 1.0):
        out.append((f"ell*c == 1 - k a (k={k:g})",
                    np.max(np.abs(cc.ell(k, r) * cc.circle_curvature(k, r) - (1 - k * cc.area_ratio(k, r)))), 1e-12))
        h = 1e-3 * r
        d_ell = central_diff(lambda x: cc.ell(k, x), r, h)
        out.append((f"ell' == ell c (k={k:g})", np.max(np.abs(d_ell - cc.ell_c(k, r))), 1e-8))
        d_c = central_diff(lambda x: cc.circle_curvature(k, x), r, h)
        out.append((f"c' == -1/ell^2 (k={k:g})", np.max(np.abs(d_c + 1 / cc.ell(k, r) ** 2)), 1e-8))
    for k in (-1e-12, 1e-12):
        dev = max(np.max(np.abs(cc.ell(k, r) - r)), np.max(np.abs(cc.area_ratio(k, r) - r * r / 2)),
                  np.max(np.abs(cc.circle_curvature(k, r) - 1 / r)))
        out.append((f"series continuity at k={k:g}", dev, 1e-9))
    dev = 0.0
    for k in (-1.0, 0.0, 1.0):
        for _ in range(50):
            c = rng.uniform(0.1, 1.4)
            a = rng.uniform(0.05, math.pi / 2 - 0.05)
            tri = cc.solve_right_triangle(k, c, a)
            ell = lambda x: cc.ell(k, x)  # noqa: E731
            lc = lambda x: cc.ell_c(k, x)  # noqa: E731
            cv = lambda x: cc.circle_curvature(k, x)  # noqa: E731
            b = tri.angle_beta
            dev = max(dev,
                      abs(ell(tri.leg_a) / math.sin(a) - ell(c)),
                      abs(ell(tri.leg_b) / math.sin(b) - ell(c)),
                      abs(lc(c) - lc(tri.leg_a) * lc(tri.leg_b)),
                      abs(math.sin(b) - ell(tri.leg_b) / ell(c)),
                      abs(math.cos(b) - cv(c) / cv(tri.leg_a)),
                      abs(math.tan(b) - 1 / (ell(tri.leg_a) * cv(tri.leg_b))),
                      abs(math.cos(b) - ell(tri.leg_b) * cv(tri.leg_b) * math.sin(a)))
    out.append(("right-triangle identities", dev, 1e-12))
    tri = cc.solve_right_triangle(-1.0, 30.0, 0.7)
    out.append(("beta -> angle of parallelism at c = 30",
                abs(tri.angle_beta - cc.angle_of_parallelism(-1.0, tri.leg_a)), 1e-9))
    p = random_disk_points(rng, 10**4, 0.999)
    out.append(("Klein/Poincare round trip",
                np.max(np.abs(models.poincare_to_klein(models.klein_to_poincare(p)) - p)), 1e-14))
    q = random_disk_points(rng, 10**4, 0.999)
    s = random_disk_points(rng, 10**4, 0.999)
    rot = rng.uniform(0, 2 * math.pi)
    m = np.array([[math.cos(rot), -math.sin(rot)], [math.sin(rot), math.cos(rot)]])
    d_pq = models.hyperbolic_distance_klein(p, q)
    out.append(("Klein distance rotation invariance",
                np.max(np.abs(models.hyperbolic_distance_klein(p @ m.T, q @ m.T) - d_pq)), 1e-10))
    tri_gap = d_pq - models.hyperbolic_distance_klein(p, s) - models.hyperbolic_distance_klein(s, q)
    out.append(("Klein triangle inequality (excess)", max(float(np.max(tri_gap)), 0.0), 1e-12))
    dev = 0.0
    for _ in range(200):
        l1 = models.ChartLine.from_normal(rng.uniform(0, 2 * math.pi), rng.uniform(-0.9, 0.9))
        l2 = models.ChartLine.from_normal(rng.uniform(0, 2 * math.pi), rng.uniform(-0.9, 0.9))
        rot = rng.uniform(0, 2 * math.pi)
        r1 = models.ChartLine(*_rotate_line(l1, rot))
        r2 = models.ChartLine(*_rotate_line(l2, rot))
        dev = max(dev, abs(models.inversive_product(l1, l2) - models.inversive_product(r1, r2)),
                  abs(models.inversive_product(l1.flipped(), l2) + models.inversive_product(l1, l2)))
    out.append(("inversive product rotation invariance / antisymmetry", dev, 1e-10))
    return out


def _rotate_line(line, rot):
    c, s = math.cos(rot), math.sin(rot)
    return c * line.a - s * line.b, s * line.a + c * line.b, line.c, line.orientation


def _hilbert(rng):
    out = []
    sym = tri = ident = 0.0
    domains = [random_polygon_domain(rng) for _ in range(3)]
    smooth = random_convex_body(rng, 0.0, size=(0.8, 1.5))
    domains += [HilbertDomain(smooth), HilbertDomain.unit_disk()]
    for dom in domains:
        n = 10**4 // len(domains)
        p, q, s = (random_interior(rng, dom, n) for _ in range(3))
        d_pq = hilbert_distance(dom, p, q)
        sym = max(sym, float(np.max(np.abs(d_pq - hilbert_distance(dom, q, p)))))
        tri = max(tri, float(np.max(d_pq - hilbert_distance(dom, p, s) - hilbert_distance(dom, s, q))))
        ident = max(ident, float(np.max(np.abs(hilbert_distance(dom, p, p)))))
    out.append(("Hilbert symmetry", sym, 1e-12))
    out.append(("Hilbert triangle inequality (excess)", max(tri, 0.0), 1e-12))
    out.append(("Hilbert identity h(P, P) = 0", ident, 1e-15))
    vsum = one = 0.0
    for _ in range(40):
        dom = random_polygon_domain(rng)
        for p, q in zip(random_interior(rng, dom, 10), random_interior(rng, dom, 10)):
            h = hilbert_distance(dom, p, q)
            vsum = max(vsum, abs(discrete_cauchy_distance(dom, p, q) - h))
            one = max(one, abs(discrete_cauchy_distance(dom, p, q, one_sided=1) - h),
                      abs(discrete_cauchy_distance(dom, p, q, one_sided=-1) - h))
    out.append(("discrete Cauchy vertex sum", vsum, 1e-12))
    out.append(("one-sided vertex sums", one, 1e-12))
    disk = HilbertDomain.unit_disk()
    p, q = random_disk_points(rng, 10**4), random_disk_points(rng, 10**4)
    out.append(("unit disk == Klein model",
                float(np.max(np.abs(hilbert_distance(disk, p, q) - models.hyperbolic_distance_klein(p, q)))), 1e-12))
    dom = random_polygon_domain(rng)
    a = rng.normal(size=(2, 2)) + 2 * np.eye(2)
    b = rng.normal(size=2)
    img = HilbertDomain(dom.boundary.affine(a, b) if np.linalg.det(a) > 0 else dom.boundary.affine(a @ np.diag([1, -1]), b))
    a_used = a if np.linalg.det(a) > 0 else a @ np.diag([1, -1])
    p, q = random_interior(rng, dom, 500), random_interior(rng, dom, 500)
    out.append(("affine invariance", float(np.max(np.abs(
        hilbert_distance(img, p @ a_used.T + b, q @ a_used.T + b) - hilbert_distance(dom, p, q)))), 1e-9))
    seg = np.array([[0.1, -0.3], [-0.2, 0.45]])
    quad = cauchy_perimeter_hilbert(disk, Polygon(seg), tol=1e-11).value
    out.append(("segment phi-quadrature == 2h", abs(quad - 2 * hilbert_distance(disk, *seg)), 1e-8))
    sq = HilbertDomain.square()
    quad = cauchy_perimeter_hilbert(sq, Polygon(seg), tol=1e-11, method="quadrature").value
    out.append(("segment phi-quadrature == 2h (square)", abs(quad - 2 * hilbert_distance(sq, *seg)), 1e-8))
    dev = 0.0
    for dom in (disk, HilbertDomain(smooth)):
        p, q = random_interior(rng, dom, 2)
        dev = max(dev, abs(oriented_distance_quadrature(dom, p, q).value
                           - oriented_distance_quadrature(dom, q, p).value))
    out.append(("oriented distance symmetry (quadrature)", dev, 1e-8))
    return out


def _perimeter(rng):
    out = []
    for k in (-1.0, 0.0, 1.0):
        spread = 0.0
        for _ in range(20):
            body = random_convex_body(rng, k)
            vals = [perimeter(k, body, m).value for m in applicable_methods(k, body)]
            spread = max(spread, (max(vals) - min(vals)) / min(vals))
        out.append((f"method agreement (k={k:g})", spread, 1e-6))
    for k in (-1.0, 0.0, 1.0):
        body = random_convex_body(rng, k)
        ref = arclength_perimeter(body, k)
        vals = [minkowski_perimeter(k, body, origin=rng.uniform(-0.5, 0.5, 2)).value for _ in range(10)]
        out.append((f"Minkowski origin independence (k={k:g})", max(abs(v - ref) for v in vals) / ref, 1e-6))
    for k, s in ((-1.0, 0.4), (0.0, 1.0), (1.0, 0.5)):
        curve = limacon(s)
        validate(curve, k, relaxed=True)
        ref = arclength_perimeter(curve, k)
        out.append((f"non-convex Minkowski (k={k:g})", abs(minkowski_perimeter(k, curve).value - ref) / ref, 1e-6))
    cauchy, mink = arc_integrals(-1.0, WITNESS_POLYGON, 0)
    out.append(("geodesic arc: Cauchy part vanishes", abs(cauchy), 1e-10))
    out.append(("geodesic arc: Minkowski part is nonzero", abs(mink), 1e-3, "min"))
    sym = inv = hw = 0.0
    for _ in range(5):
        body = random_convex_body(rng, -1.0)
        fr = support_frames(body, -1.0, np.linspace(0, 2 * math.pi, 64, endpoint=False))
        sym = max(sym, float(np.max(np.abs(wrap_angle(fr.omega - 0.5 * (fr.phi + fr.phi_tilde))))))
        for phi in rng.uniform(0, 2 * math.pi, 16):
            s = support_lines_from_ideal(body, -1.0, phi)
            inv = max(inv, abs(s.h - models.inversive_product(models.ChartLine.from_normal(phi, 0.0), s.right)))
        hw = max(hw, abs(projective_cauchy_h(body).value - projective_cauchy_w(body).value))
    out.append(("omega == (phi + phi~)/2", sym, 1e-10))
    out.append(("h == inversive product (OS, PR)", inv, 1e-9))
    out.append(("int h dphi == (1/2) int w dphi", hw, 1e-8))
    return out


WITNESS_POLYGON = Polygon([[-0.5, -0.4], [0.6, -0.4], [0.1, 0.6]])


def limacon(scale, a=0.5):
    """Simple closed non-convex curve ``r = 1 + a cos 3t`` (scaled)."""
    h = 0.5 * a
    return TrigCurve(scale * np.array([0, 1, 0, h, 0, 0, 0, h, 0]),
                     scale * np.array([0, 0, 1, 0, -h, 0, 0, 0, h]))


def _measures(rng):
    out = []
    kap = drw = forms = 0.0
    bundle = 0.0
    for k in (-1.0, 1.0):
        for _ in range(5):
            body = random_convex_body(rng, k)
            t = 2 * math.pi * np.arange(256) / 256
            fr = tangent_frames(body, k, t)
            h = 1e-4 * 2 * math.pi
            om = fr.omega
            domega_dt = central_diff(lambda u: om + wrap_angle(tangent_frames(body, k, u).omega - om), t, h)
            a, b = kappa_from_omega(k, fr, domega_dt / fr.speed, both=True)
            kap = max(kap, float(np.max(np.abs(a - fr.kappa_g))))
            forms = max(forms, float(np.max(np.abs(a - b))))
            dr_dt = central_diff(lambda u: tangent_frames(body, k, u).r, t, h)
            drw = max(drw, float(np.max(np.abs(dr_dt / domega_dt - dr_domega(k, fr)))))
    for k in (-1.0, 0.0, 1.0):
        body = random_convex_body(rng, k)
        fr = support_frames(body, k, np.linspace(0, 2 * math.pi, 512, endpoint=False))
        ell = lambda x: cc.ell(k, x)  # noqa: E731
        cv = lambda x: cc.circle_curvature(k, x)  # noqa: E731
        bundle = max(bundle,
                     float(np.max(np.abs(ell(fr.r) - ell(fr.rho) * np.cos(fr.alpha)))),
                     float(np.max(np.abs(np.cos(fr.omega - fr.theta) * cv(fr.r) - cv(fr.rho)) / cv(fr.rho))),
                     float(np.max(np.abs(np.sin(fr.omega - fr.theta) * ell(fr.rho) - ell(fr.x)))),
                     float(np.nanmax(np.abs(np.cos(fr.beta) - cv(fr.rho) * cc.tan_k(k, fr.x)))))
    out.append(("curvature from domega/ds", kap, 1e-6))
    out.append(("curvature forms agree", forms, 1e-12))
    out.append(("dr/domega", drw, 1e-6))
    out.append(("support-frame triangle bundle", bundle, 1e-10))
    ratio = poincare = chain = pair = 0.0
    for _ in range(3):
        body = random_convex_body(rng, -1.0)
        t = 2 * math.pi * np.arange(64) / 64
        m = measure_ratios(-1.0, body, t)
        oracle = measure_oracles(-1.0, body, t)
        for name, val in oracle.items():
            ratio = max(ratio, float(np.max(np.abs(getattr(m, name) - val))))
        poincare = max(poincare, float(np.max(np.abs(m.dphi_dtheta - m.dphi_dtheta_poincare))))
        chain = max(chain, float(np.max(np.abs(m.dphi_dtheta - m.dphi_domega * m.domega_dtheta))))
        pair = max(pair, float(np.max(np.abs(m.dphi_domega + m.dphitilde_domega - 2.0))))
    for k in (0.0, 1.0):
        body = random_convex_body(rng, k)
        t = 2 * math.pi * np.arange(64) / 64
        m = measure_ratios(k, body, t)
        for name, val in measure_oracles(k, body, t).items():
            ratio = max(ratio, float(np.max(np.abs(getattr(m, name) - val))))
    out.append(("measure ratios vs central differences", ratio, 1e-5))
    out.append(("dphi/dtheta: two expressions", poincare, 1e-10))
    out.append(("dphi/dtheta chain rule", chain, 1e-12))
    out.append(("dphi/domega + dphi~/domega == 2", pair, 1e-12))
    return out


_RUNNERS = {"core": _core, "hilbert": _hilbert, "perimeter": _perimeter, "measures": _measures}


def run_suite(suite="all", seed=0, threshold_scale=1.0):
    """Run one suite (or ``"all"``) and return a list of :class:`CheckResult`."""
    names = SUITES if suite == "all" else (suite,)
    results = []
    for i, name in enumerate(names):
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        for check, dev, thr, *kind in _RUNNERS[name](rng):
            kind = kind[0] if kind else "max"
            dev = float(dev)
            if kind == "min":
                limit = thr / threshold_scale if threshold_scale > 0 else math.inf
                passed = dev > limit
            else:
                limit = thr * threshold_scale
                passed = dev < limit
            results.append(CheckResult(name, check, dev, limit, bool(passed), kind))
    return results
