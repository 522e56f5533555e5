"""Supertriangles and the super laws of cosines and sines."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import CoincidentBodies, DegenerateTriangle, SamplerExhausted
from .geodesic import contains, through, unit_tangent
from .grassmann import Algebra, Supernumber, analytic_apply
from .minkowski import SuperVector, inner, require_ih

__all__ = [
    "Triangle",
    "TriangleReport",
    "unit_tangent",
    "angle_cos",
    "triangle_report",
    "random_triangle",
    "triangle_to_json",
    "triangle_from_json",
    "report_to_json",
]

MAX_RESAMPLES = 200
# sin = sqrt(1 - cos^2) loses accuracy in its soul terms as |cos| -> 1
MAX_ANGLE_COS = 0.99


@dataclass(frozen=True)
class Triangle:
    A: SuperVector
    B: SuperVector
    C: SuperVector

    @property
    def vertices(self):
        return self.A, self.B, self.C

    def validate(self, tol: float | None = None) -> None:
        for name, p in zip("ABC", self.vertices):
            require_ih(p, tol, name)
        A, B, C = self.vertices
        for (n1, p), (n2, q) in ((("A", A), ("B", B)), (("B", B), ("C", C)), (("A", A), ("C", C))):
            if inner(p, q).body <= 1:
                raise DegenerateTriangle(f"vertices {n1} and {n2} have coincident bodies")
        if contains(through(A, B, tol), C, tol):
            raise DegenerateTriangle("vertices lie on a common geodesic")


@dataclass
class TriangleReport:
    cosh_sides: tuple[Supernumber, Supernumber, Supernumber]
    cos_angles: tuple[Supernumber, Supernumber, Supernumber]
    residuals: dict[str, Supernumber]

    def max_residual(self) -> float:
        return max(r.max_abs() for r in self.residuals.values())


def angle_cos(vertex: SuperVector, P: SuperVector, Q: SuperVector) -> Supernumber:
    """Geometric cosine of the angle at ``vertex`` between the rays toward P and Q.

    Tangent vectors have negative norm, so the cosine is minus their inner product.
    """
    t1 = unit_tangent(vertex, P)
    t2 = t1 if P is Q else unit_tangent(vertex, Q)
    return -inner(t1, t2)


def _sin_from_cos(c: Supernumber) -> Supernumber:
    return analytic_apply("sqrt", 1 - c * c)


def _sinh_from_cosh(c: Supernumber) -> Supernumber:
    return analytic_apply("sqrt", c * c - 1)


def triangle_report(T: Triangle, tol: float | None = None) -> TriangleReport:
    """Sides, angles and the residuals of the three laws.

    Side A is opposite vertex A and angle a sits at vertex A.
    """
    T.validate(tol)
    A, B, C = T.vertices
    chA, chB, chC = inner(B, C), inner(A, C), inner(A, B)
    ca, cb, cc = angle_cos(A, B, C), angle_cos(B, A, C), angle_cos(C, A, B)
    shA, shB, shC = (_sinh_from_cosh(x) for x in (chA, chB, chC))
    sa, sb, sc = (_sin_from_cos(x) for x in (ca, cb, cc))

    cosines = chA - (chB * chC - shB * shC * ca)
    dual = ca - (-cb * cc + sb * sc * chA)
    ra, rb, rc = sa * shA.inverse(), sb * shB.inverse(), sc * shC.inverse()
    residuals = {
        "law_of_cosines": cosines,
        "dual_law_of_cosines": dual,
        "law_of_sines_ab": ra - rb,
        "law_of_sines_bc": rb - rc,
    }
    return TriangleReport((chA, chB, chC), (ca, cb, cc), residuals)


def random_triangle(seed: int, fermionic_scale: float = 0.5, alg: Algebra | None = None,
                    spread: float = 1.0) -> Triangle:
    """Deterministic random supertriangle; collinear or degenerate draws are resampled."""
    from .sampling import random_ih_point

    alg = alg or Algebra(4, "float")
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        pts = [random_ih_point(rng, alg, spread, fermionic_scale) for _ in range(3)]
        T = Triangle(*pts)
        try:
            T.validate()
        except (DegenerateTriangle, CoincidentBodies):
            continue
        # keep away from nearly collinear or nearly coincident draws
        if min(inner(p, q).body for p, q in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[0], pts[2]))) < 1.01:
            continue
        A, B, C = pts
        if max(abs(angle_cos(A, B, C).body), abs(angle_cos(B, A, C).body),
               abs(angle_cos(C, A, B).body)) > MAX_ANGLE_COS:
            continue
        return T
    raise SamplerExhausted(f"no admissible triangle after {MAX_RESAMPLES} draws")


def triangle_to_json(T: Triangle) -> dict:
    from .minkowski import vector_to_json

    return {k: vector_to_json(p) for k, p in zip("ABC", T.vertices)}


def triangle_from_json(obj: dict, alg: Algebra) -> Triangle:
    from .errors import ParseError
    from .minkowski import vector_from_json

    if not isinstance(obj, dict) or set("ABC") - set(obj):
        raise ParseError("triangle JSON needs keys A, B, C")
    return Triangle(*(vector_from_json(obj[k], alg) for k in "ABC"))


def report_to_json(r: TriangleReport) -> dict:
    from .textio import supernumber_to_json

    return {
        "cosh_sides": [supernumber_to_json(x) for x in r.cosh_sides],
        "cos_angles": [supernumber_to_json(x) for x in r.cos_angles],
        "residuals": {k: v.max_abs() for k, v in r.residuals.items()},
    }
