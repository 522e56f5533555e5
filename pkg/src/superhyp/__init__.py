"""Geometry of the super hyperbolic plane over a truncated Grassmann algebra."""

from .errors import ParseError, SuperGeometryError
from .geodesic import Geodesic, distance, foot, from_endpoints, point_at, through
from .grassmann import Algebra, Supernumber, analytic_apply
from .minkowski import SuperVector, act, classify, inner, vector
from .pairs import classify_pair, common_perpendicular, intersect
from .superlinalg import SuperMatrix, berezinian, embed_sl2, osp_check, smul, u_gen
from .trig import Triangle, angle_cos, random_triangle, triangle_report

__all__ = [
    "Algebra", "Supernumber", "analytic_apply",
    "SuperMatrix", "smul", "berezinian", "osp_check", "embed_sl2", "u_gen",
    "SuperVector", "vector", "inner", "classify", "act",
    "Geodesic", "from_endpoints", "point_at", "through", "distance", "foot",
    "Triangle", "angle_cos", "random_triangle", "triangle_report",
    "intersect", "classify_pair", "common_perpendicular",
    "SuperGeometryError", "ParseError",
]
