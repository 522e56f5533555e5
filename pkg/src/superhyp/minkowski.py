"""Super Minkowski space R^{2,1|2}.

Points are (x1, x2, y | phi, psi) with pairing

    <p, q> = (x1 x2' + x1' x2)/2 - y y' + phi psi' + phi' psi

and OSp(1|2) acts through the quadratic-form matrix A(p) by A -> g^st A g.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonInvertible, NotOnIH, ParityError, ShapeError
from .grassmann import Algebra, Supernumber
from .superlinalg import SuperMatrix, smul, supertranspose


@dataclass(frozen=True)
class SuperVector:
    x1: Supernumber
    x2: Supernumber
    y: Supernumber
    phi: Supernumber
    psi: Supernumber

    @property
    def alg(self) -> Algebra:
        return self.x1.alg

    def components(self):
        return (self.x1, self.x2, self.y, self.phi, self.psi)

    def check_parity(self) -> None:
        for name in ("x1", "x2", "y"):
            if not getattr(self, name).is_even():
                raise ParityError(f"{name} must be even")
        for name in ("phi", "psi"):
            if not getattr(self, name).is_odd():
                raise ParityError(f"{name} must be odd")

    def __add__(self, other: SuperVector) -> SuperVector:
        return SuperVector(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other: SuperVector) -> SuperVector:
        return SuperVector(*(a - b for a, b in zip(self.components(), other.components())))

    def __neg__(self) -> SuperVector:
        return SuperVector(*(-a for a in self.components()))

    def __mul__(self, k) -> SuperVector:
        # k is an even supernumber or a plain scalar, so it commutes with everything
        return SuperVector(*(a * k for a in self.components()))

    __rmul__ = __mul__

    def __truediv__(self, k) -> SuperVector:
        if isinstance(k, Supernumber):
            k = k.inverse()
            return self * k
        return SuperVector(*(a / k for a in self.components()))

    def body(self) -> tuple:
        return (self.x1.body, self.x2.body, self.y.body)

    def max_abs(self) -> float:
        return max(a.max_abs() for a in self.components())

    def allclose(self, other: SuperVector, tol: float = 1e-9) -> bool:
        return (self - other).max_abs() <= tol

    def map(self, fn) -> SuperVector:
        return SuperVector(*(fn(a) for a in self.components()))

    def is_bosonic(self) -> bool:
        return all(a.soul.is_zero() for a in self.components())


def vector(alg: Algebra, x1, x2, y, phi=0, psi=0) -> SuperVector:
    p = SuperVector(*(Supernumber.lift(alg, v) for v in (x1, x2, y, phi, psi)))
    p.check_parity()
    return p


def inner(p: SuperVector, q: SuperVector) -> Supernumber:
    return (p.x1 * q.x2 + q.x1 * p.x2) / 2 - p.y * q.y + p.phi * q.psi + q.phi * p.psi


def norm2(p: SuperVector) -> Supernumber:
    return inner(p, p)


@dataclass
class ConicClass:
    tag: str  # IH, H, LplusSpecial, Lplus, Lother, none
    residual: float
    special_residual: float | None = None


def _default_tol(alg: Algebra) -> float:
    return 0.0 if alg.exact else 1e-9


def classify(p: SuperVector, tol: float | None = None) -> ConicClass:
    """Which conic p lies on, judged coefficientwise within ``tol``."""
    if tol is None:
        tol = _default_tol(p.alg)
    q = norm2(p)
    height = (p.x1 + p.x2).body
    r_ih = (q - 1).max_abs()
    if r_ih <= tol and height > 0:
        return ConicClass("IH", r_ih)
    r_h = (q + 1).max_abs()
    if r_h <= tol:
        return ConicClass("H", r_h)
    r_l = q.max_abs()
    if r_l <= tol:
        if height > 0:
            sp = (p.x1 * p.psi - p.y * p.phi).max_abs()
            tag = "LplusSpecial" if sp <= tol else "Lplus"
            return ConicClass(tag, r_l, sp)
        return ConicClass("Lother", r_l)
    return ConicClass("none", min(r_ih, r_h, r_l))


def in_lplus(cls: ConicClass) -> bool:
    return cls.tag in ("Lplus", "LplusSpecial")


def require_ih(p: SuperVector, tol: float | None = None, what: str = "point") -> None:
    c = classify(p, tol)
    if c.tag != "IH":
        raise NotOnIH(f"{what} is not on IH (classified {c.tag}, residual {c.residual:.3g})")


def to_form_matrix(p: SuperVector) -> SuperMatrix:
    zero = p.alg.zero()
    return SuperMatrix(
        a=p.x1, b=p.y, alpha=p.phi,
        c=p.y, d=p.x2, beta=p.psi,
        gamma=-p.phi, delta=-p.psi, f=zero,
    )


def from_form_matrix(m: SuperMatrix, tol: float | None = None) -> SuperVector:
    """Inverse of :func:`to_form_matrix`; off-shape input raises ShapeError."""
    if tol is None:
        tol = _default_tol(m.alg)
    scale = max(1.0, m.max_abs())
    defects = {
        "symmetry": (m.b - m.c).max_abs(),
        "gamma": (m.gamma + m.alpha).max_abs(),
        "delta": (m.delta + m.beta).max_abs(),
        "f": m.f.max_abs(),
    }
    bad = {k: v for k, v in defects.items() if v > tol * scale}
    if bad:
        raise ShapeError(f"not a quadratic-form matrix: {bad}")
    return SuperVector(m.a, m.d, m.b, m.alpha, m.beta)


def act(g: SuperMatrix, p: SuperVector) -> SuperVector:
    """Adjoint action A(p) -> g^st A(p) g."""
    m = smul(smul(supertranspose(g), to_form_matrix(p)), g)
    return from_form_matrix(m)


def super_discriminant(a, b, c, phi, psi) -> Supernumber:
    """D = b^2 - 4ac + 8 phi psi for the binary superform with entries (a, b/2, c | phi, psi)."""
    for name, x, par in (("a", a, "even"), ("b", b, "even"), ("c", c, "even"),
                         ("phi", phi, "odd"), ("psi", psi, "odd")):
        ok = x.is_even() if par == "even" else x.is_odd()
        if not ok:
            raise ParityError(f"{name} must be {par}")
    return b * b - 4 * a * c + 8 * phi * psi


def discriminant_of(p: SuperVector) -> Supernumber:
    """Discriminant of the superform carried by p.

    The superform matrix (a, b/2, phi / b/2, c, psi / phi, -psi, 0) has the
    opposite sign on the psi slot compared with the form matrix of p, so
    (a, b, c, phi, psi) = (x1, 2y, x2, phi, -psi) and D = -4 <p, p>.
    """
    return super_discriminant(p.x1, 2 * p.y, p.x2, p.phi, -p.psi)


def to_upper_half_plane(p: SuperVector, tol: float | None = None):
    """(z, theta) = ((i - y - i phi psi)/x2, (psi/x2)(1 + i y) - i phi), complex scalars."""
    if p.alg.exact:
        from .errors import ExactModeUnsupported

        raise ExactModeUnsupported("the upper half-plane map needs complex float scalars")
    require_ih(p, tol)
    if p.x2.body == 0:
        raise NonInvertible("x2 has zero body; the point maps to the superabsolute")
    x1, x2, y, phi, psi = (c.to_scalar("complex") for c in p.components())
    alg = x1.alg
    i = 1j
    x2inv = x2.inverse()
    z = (alg.scalar_(i) - y - phi * psi * i) * x2inv
    theta = psi * x2inv * (1 + y * i) - phi * i
    return z, theta


def vector_to_json(p: SuperVector) -> dict:
    from .textio import supernumber_to_json

    return {k: supernumber_to_json(v) for k, v in zip(("x1", "x2", "y", "phi", "psi"), p.components())}


def vector_from_json(obj: dict, alg: Algebra) -> SuperVector:
    from .errors import ParseError
    from .textio import supernumber_from_json

    if not isinstance(obj, dict):
        raise ParseError(f"expected a vector object, got {obj!r}")
    missing = [k for k in ("x1", "x2", "y", "phi", "psi") if k not in obj]
    if missing:
        raise ParseError(f"vector JSON missing {missing}")
    p = SuperVector(*(supernumber_from_json(obj[k], alg) for k in ("x1", "x2", "y", "phi", "psi")))
    try:
        p.check_parity()
    except ParityError as exc:
        raise ParseError(str(exc)) from None
    return p
