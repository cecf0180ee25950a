"""Numerical kernels: periodic and adaptive quadrature, finite differences,
bracketed root finding.

Integrands are expected to be vectorised: ``f(t)`` receives a 1-d array of
nodes and returns an array of the same shape.  Every kernel is deterministic
(fixed node order, numpy's pairwise summation).
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import GeometryError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


def _sample(f, t):
    # constant integrands may return a scalar
    return np.broadcast_to(np.asarray(f(t), dtype=float), t.shape)


def integrate_periodic(f, tol=1e-10, a=0.0, b=TWO_PI, min_nodes=16, max_nodes=2**20):
    """Trapezoid rule for a periodic integrand, doubling the node count.

    Stops once two successive estimates differ by less than ``tol``.  For
    analytic periodic integrands the convergence is geometric, so the last
    difference is a (pessimistic) bound on the error of the returned value.
    If ``max_nodes`` is reached the result is flagged ``converged=False``.
    """
    period = b - a
    n = int(min_nodes)
    t = a + period * np.arange(n) / n
    total = np.sum(_sample(f, t))
    value = period * total / n
    evaluations = n
    delta = np.inf
    while n < max_nodes:
        mid = a + period * (np.arange(n) + 0.5) / n
        total = total + np.sum(_sample(f, mid))
        evaluations += n
        n *= 2
        new_value = period * total / n
        delta = abs(new_value - value)
        value = new_value
        if delta < tol:
            return QuadResult(float(value), float(delta), evaluations, True)
    return QuadResult(float(value), float(delta), evaluations, False)


# Gauss-Kronrod 7/15 pair on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[13:7:-2] = _WG[:3]


def _gk15(f, lo, hi):
    """Kronrod value and |Kronrod - Gauss| on every interval [lo_i, hi_i]."""
    half = 0.5 * (hi - lo)
    center = 0.5 * (hi + lo)
    nodes = center[:, None] + half[:, None] * _NODES[None, :]
    vals = _sample(f, nodes.ravel()).reshape(nodes.shape)
    kron = half * (vals @ _KRONROD)
    gauss = half * (vals @ _GAUSS)
    return kron, np.abs(kron - gauss)


def integrate_adaptive(f, a, b, tol=1e-10, max_rounds=40, breakpoints=()):
    """Adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over ``[a, b]``.

    Intervals whose embedded error exceeds their share of ``tol`` are bisected,
    all of them in one vectorised batch per round.  ``breakpoints`` inside
    ``(a, b)`` seed the initial partition, which is how kinked integrands
    (polygon fans) are handled exactly.
    """
    if not a < b:
        if a == b:
            return QuadResult(0.0, 0.0, 0, True)
        raise GeometryError("BAD_INTERVAL", f"integrate_adaptive needs a < b, got [{a}, {b}]")
    edges = np.unique(np.concatenate([[a, b], [p for p in breakpoints if a < p < b]]))
    lo, hi = edges[:-1], edges[1:]
    kron, err = _gk15(f, lo, hi)
    evaluations = 15 * lo.size
    done_value = 0.0
    done_error = 0.0
    width = b - a
    for _ in range(max_rounds):
        total_err = done_error + err.sum()
        if total_err <= tol:
            return QuadResult(float(done_value + kron.sum()), float(total_err), evaluations, True)
        share = tol * (hi - lo) / width
        split = err > share
        done_value += kron[~split].sum()
        done_error += err[~split].sum()
        lo_s, hi_s = lo[split], hi[split]
        mid = 0.5 * (lo_s + hi_s)
        lo = np.concatenate([lo_s, mid])
        hi = np.concatenate([mid, hi_s])
        kron, err = _gk15(f, lo, hi)
        evaluations += 15 * lo.size
    total_err = done_error + err.sum()
    return QuadResult(float(done_value + kron.sum()), float(total_err), evaluations,
                      bool(total_err <= tol))


def central_diff(f, t, h, order=5):
    """Central-difference derivative of ``f`` at ``t`` (3- or 5-point stencil)."""
    if order == 3:
        return (f(t + h) - f(t - h)) / (2.0 * h)
    if order == 5:
        return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h)
    raise ValueError(f"order must be 3 or 5, got {order}")


def find_root_monotone(f, lo, hi, tol=1e-14):
    """Root of a continuous monotone ``f`` bracketed by ``[lo, hi]``."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0.0:
        raise GeometryError("BAD_BRACKET", f"f({lo})={flo} and f({hi})={fhi} have the same sign")
    return float(brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200))


def bisect_many(g, lo, hi, iterations=60):
    """Elementwise bisection for a batch of bracketed roots.

    ``g(t)`` maps an array of parameters to an array of values; ``lo`` and
    ``hi`` bracket a sign change in each component.  Returns the midpoints
    after ``iterations`` halvings.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    glo = g(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        same = np.sign(gm) == np.sign(glo)
        lo = np.where(same, mid, lo)
        glo = np.where(same, gm, glo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)
