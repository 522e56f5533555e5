"""Supergeodesics x(t) = u cosh t + v sinh t on the super hyperbolic plane."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CoincidentBodies,
    InvalidGeodesic,
    NotLightlike,
    PointOnLine,
    ScaleMismatch,
)
from .grassmann import Supernumber, analytic_apply
from .minkowski import (
    SuperVector,
    act,
    classify,
    in_lplus,
    inner,
    require_ih,
)
from .superlinalg import SuperMatrix

BRANCH_EPS = 1e-9


def _tol(alg, tol):
    if tol is not None:
        return tol
    return 0.0 if alg.exact else 1e-9


@dataclass(frozen=True)
class Geodesic:
    u: SuperVector
    v: SuperVector

    @property
    def alg(self):
        return self.u.alg

    @property
    def e(self) -> SuperVector:
        return self.u + self.v

    @property
    def f(self) -> SuperVector:
        return self.u - self.v

    def residuals(self) -> dict[str, float]:
        return {
            "uu": (inner(self.u, self.u) - 1).max_abs(),
            "vv": (inner(self.v, self.v) + 1).max_abs(),
            "uv": inner(self.u, self.v).max_abs(),
        }

    def check(self, tol: float | None = None) -> None:
        tol = _tol(self.alg, tol)
        bad = {k: r for k, r in self.residuals().items() if r > tol}
        if bad or (self.u.x1 + self.u.x2).body <= 0:
            raise InvalidGeodesic(f"(u, v) is not a geodesic frame: {bad or 'u not in upper sheet'}")


@dataclass
class DistanceResult:
    cosh_d: Supernumber
    d: Supernumber | None


def _scalar(alg, t) -> Supernumber:
    return Supernumber.lift(alg, t)


def _cosh_sinh(t: Supernumber):
    return analytic_apply("cosh", t), analytic_apply("sinh", t)


def from_endpoints(e: SuperVector, f: SuperVector, normalize: bool = False,
                   tol: float | None = None) -> Geodesic:
    """Geodesic with asymptotes along the rays of e and f (u = (e+f)/2, v = (e-f)/2).

    With ``normalize`` set, f is rescaled by 2/<e,f>; that changes only the
    origin of the parametrization.
    """
    tol = _tol(e.alg, tol)
    for name, w in (("e", e), ("f", f)):
        if not in_lplus(classify(w, tol)):
            raise NotLightlike(f"{name} is not in the positive light cone")
    ef = inner(e, f)
    if ef.body <= 0:
        raise ScaleMismatch(f"<e,f> has non-positive body {ef.body}")
    if (ef - 2).max_abs() > tol:
        if not normalize:
            raise ScaleMismatch(f"<e,f> = {ef} is not 2")
        f = f * (2 / ef)
    return Geodesic((e + f) / 2, (e - f) / 2)


def point_at(L: Geodesic, t) -> SuperVector:
    t = _scalar(L.alg, t)
    ch, sh = _cosh_sinh(t)
    return L.u * ch + L.v * sh


def point_from_tanh(L: Geodesic, tanh_t: Supernumber) -> SuperVector:
    """Point at the parameter whose tanh is given (avoids an explicit arctanh)."""
    tanh_t = _scalar(L.alg, tanh_t)
    ch = analytic_apply("sqrt", 1 - tanh_t * tanh_t).inverse()
    return L.u * ch + L.v * (tanh_t * ch)


def tangent_at(L: Geodesic, t) -> SuperVector:
    t = _scalar(L.alg, t)
    ch, sh = _cosh_sinh(t)
    return L.u * sh + L.v * ch


def distance(p: SuperVector, q: SuperVector, tol: float | None = None,
             branch_eps: float = BRANCH_EPS) -> DistanceResult:
    """cosh d = <p, q>; d itself only away from the arccosh branch point."""
    require_ih(p, tol, "p")
    require_ih(q, tol, "q")
    c = inner(p, q)
    d = None
    if not p.alg.exact and c.body > 1 + branch_eps:
        d = analytic_apply("arccosh", c)
    return DistanceResult(c, d)


def unit_tangent(X: SuperVector, Y: SuperVector) -> SuperVector:
    """(Y - X<X,Y>)/sqrt(<X,Y>^2 - 1): unit tangent at X toward Y."""
    c = inner(X, Y)
    s2 = c * c - 1
    if s2.body <= 0:
        raise CoincidentBodies("points have coincident bodies; tangent undefined")
    return (Y - X * c) * analytic_apply("sqrt", s2).inverse()


def through(p: SuperVector, q: SuperVector, tol: float | None = None) -> Geodesic:
    """The geodesic from p toward q, with origin at p."""
    require_ih(p, tol, "p")
    require_ih(q, tol, "q")
    return Geodesic(p, unit_tangent(p, q))


def contains(L: Geodesic, p: SuperVector, tol: float | None = None) -> bool:
    tol = _tol(p.alg, tol)
    require_ih(p, tol)
    return (inner(p, L.e) * inner(p, L.f) - 1).max_abs() <= tol


def span_point(L: Geodesic, x, y) -> SuperVector:
    """(x e + y f)/(2 sqrt(xy)), the projectivized span form of a point on L."""
    x = _scalar(L.alg, x)
    y = _scalar(L.alg, y)
    return (L.e * x + L.f * y) * (2 * analytic_apply("sqrt", x * y)).inverse()


def shift_origin(L: Geodesic, t0) -> Geodesic:
    t0 = _scalar(L.alg, t0)
    ch, sh = _cosh_sinh(t0)
    return Geodesic(L.u * ch + L.v * sh, L.u * sh + L.v * ch)


def act_geodesic(g: SuperMatrix, L: Geodesic) -> Geodesic:
    return Geodesic(act(g, L.u), act(g, L.v))


@dataclass
class Foot:
    Q: SuperVector
    perp: Geodesic
    dist: DistanceResult
    tanh_param: Supernumber


def foot(P: SuperVector, L: Geodesic, tol: float | None = None) -> Foot:
    """Orthogonal projection of P on L and the perpendicular through P.

    The critical point of t -> <P, x(t)> has tanh t = -<P,v>/<P,u>, giving
    Q = (<P,u> u - <P,v> v)/sqrt(<P,u>^2 - <P,v>^2).
    """
    require_ih(P, tol, "P")
    if contains(L, P, tol):
        raise PointOnLine("P lies on L")
    pu = inner(P, L.u)
    pv = inner(P, L.v)
    norm = analytic_apply("sqrt", pu * pu - pv * pv)
    Q = (L.u * pu - L.v * pv) * norm.inverse()
    perp = through(P, Q, tol)
    return Foot(Q, perp, distance(P, Q, tol), -pv * pu.inverse())


def geodesic_to_json(L: Geodesic) -> dict:
    from .minkowski import vector_to_json

    return {"u": vector_to_json(L.u), "v": vector_to_json(L.v)}


def geodesic_from_json(obj: dict, alg, tol: float | None = None) -> Geodesic:
    from .errors import ParseError
    from .minkowski import vector_from_json

    if not isinstance(obj, dict):
        raise ParseError(f"expected a geodesic object, got {obj!r}")
    if "u" in obj and "v" in obj:
        L = Geodesic(vector_from_json(obj["u"], alg), vector_from_json(obj["v"], alg))
        L.check(tol)
        return L
    if "e" in obj and "f" in obj:
        return from_endpoints(vector_from_json(obj["e"], alg), vector_from_json(obj["f"], alg),
                              normalize=bool(obj.get("normalize", False)), tol=tol)
    raise ParseError("geodesic JSON needs u,v or e,f")
