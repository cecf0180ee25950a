"""Perimeters and distances of convex bodies by integral geometry.

Works in the constant-curvature planes (Euclidean, spherical, hyperbolic)
through straight-geodesic charts, and in Hilbert geometries on convex domains.
"""

from .body import Polygon, TrigCurve, contains, load_body, random_convex_body, validate
from .curvature import arctan_k, area_ratio, circle_curvature, ell, ell_c, solve_right_triangle, tan_k
from .errors import GeometryError
from .frames import arclength_perimeter, boundary_frame, ideal_psi, support_frames, support_lines_from_ideal
from .hilbert import (HilbertDomain, cauchy_perimeter_hilbert, crofton_length_mc, discrete_cauchy_distance,
                      hilbert_distance, hilbert_perimeter_oracle, oriented_distance_mc)
from .models import ChartLine, chart_distance, hyperbolic_distance_klein, inversive_product
from .perimeter import METHODS, PerimeterReport, measure_ratios, perimeter

__version__ = "0.1.0"

__all__ = [
    "ChartLine", "GeometryError", "HilbertDomain", "METHODS", "PerimeterReport", "Polygon", "TrigCurve",
    "arclength_perimeter", "arctan_k", "area_ratio", "boundary_frame", "cauchy_perimeter_hilbert",
    "chart_distance", "circle_curvature", "contains", "crofton_length_mc", "discrete_cauchy_distance",
    "ell", "ell_c", "hilbert_distance", "hilbert_perimeter_oracle", "hyperbolic_distance_klein",
    "ideal_psi", "inversive_product", "load_body", "measure_ratios", "oriented_distance_mc", "perimeter",
    "random_convex_body", "solve_right_triangle", "support_frames", "support_lines_from_ideal", "tan_k",
    "validate",
]
