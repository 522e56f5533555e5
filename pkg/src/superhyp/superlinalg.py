"""(2|1)x(2|1) supermatrices and the orthosymplectic group OSp(1|2).

Matrices are laid out as::

    ( a      b      alpha )
    ( c      d      beta  )
    ( gamma  delta  f     )

with a, b, c, d, f even and alpha, beta, gamma, delta odd.  The product used
here differs from the textbook supermatrix product: the odd entries of the
third row are stored with the opposite sign, which introduces the minus signs
visible in :func:`smul`.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import (
    DeterminantNotOne,
    GradingError,
    NonInvertible,
    OspInvariantError,
    ParityError,
)
from .grassmann import Algebra, Supernumber

EVEN_SLOTS = ("a", "b", "c", "d", "f")
ODD_SLOTS = ("alpha", "beta", "gamma", "delta")


@dataclass(frozen=True)
class SuperMatrix:
    a: Supernumber
    b: Supernumber
    alpha: Supernumber
    c: Supernumber
    d: Supernumber
    beta: Supernumber
    gamma: Supernumber
    delta: Supernumber
    f: Supernumber

    @property
    def alg(self) -> Algebra:
        return self.a.alg

    def entries(self) -> dict[str, Supernumber]:
        return {fl.name: getattr(self, fl.name) for fl in fields(self)}

    def rows(self):
        return (
            (self.a, self.b, self.alpha),
            (self.c, self.d, self.beta),
            (self.gamma, self.delta, self.f),
        )

    def check_grading(self) -> None:
        for name in EVEN_SLOTS:
            if not getattr(self, name).is_even():
                raise GradingError(f"entry {name} must be even")
        for name in ODD_SLOTS:
            if not getattr(self, name).is_odd():
                raise GradingError(f"entry {name} must be odd")

    def map(self, fn) -> SuperMatrix:
        return SuperMatrix(**{k: fn(v) for k, v in self.entries().items()})

    def __sub__(self, other: SuperMatrix) -> SuperMatrix:
        o = other.entries()
        return SuperMatrix(**{k: v - o[k] for k, v in self.entries().items()})

    def max_abs(self) -> float:
        return max(v.max_abs() for v in self.entries().values())

    def allclose(self, other: SuperMatrix, tol: float = 1e-10) -> bool:
        return (self - other).max_abs() <= tol

    def bosonic_block(self):
        return (self.a, self.b, self.c, self.d)


def from_rows(alg: Algebra, rows) -> SuperMatrix:
    lift = lambda x: Supernumber.lift(alg, x)  # noqa: E731
    (a, b, al), (c, d, be), (ga, de, f) = rows
    return SuperMatrix(lift(a), lift(b), lift(al), lift(c), lift(d), lift(be), lift(ga), lift(de), lift(f))


def identity(alg: Algebra) -> SuperMatrix:
    return from_rows(alg, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def J(alg: Algebra) -> SuperMatrix:
    """The form preserved by OSp(1|2): g^st J g = J."""
    return from_rows(alg, ((0, 1, 0), (-1, 0, 0), (0, 0, -1)))


def smul(g: SuperMatrix, h: SuperMatrix, check: bool = True) -> SuperMatrix:
    """Product in the sign convention above (not plain matrix multiplication)."""
    if check:
        g.check_grading()
        h.check_grading()
    a1, b1, al1, c1, d1, be1, ga1, de1, f1 = (
        g.a, g.b, g.alpha, g.c, g.d, g.beta, g.gamma, g.delta, g.f)
    a2, b2, al2, c2, d2, be2, ga2, de2, f2 = (
        h.a, h.b, h.alpha, h.c, h.d, h.beta, h.gamma, h.delta, h.f)
    return SuperMatrix(
        a=a1 * a2 + b1 * c2 - al1 * ga2,
        b=a1 * b2 + b1 * d2 - al1 * de2,
        alpha=a1 * al2 + b1 * be2 + al1 * f2,
        c=c1 * a2 + d1 * c2 - be1 * ga2,
        d=c1 * b2 + d1 * d2 - be1 * de2,
        beta=c1 * al2 + d1 * be2 + be1 * f2,
        # the third-row odd entries pick up f1 * gamma2, f1 * delta2
        gamma=ga1 * a2 + de1 * c2 + f1 * ga2,
        delta=ga1 * b2 + de1 * d2 + f1 * de2,
        f=-(ga1 * al2) - de1 * be2 + f1 * f2,
    )


def smul_chain(*ms: SuperMatrix) -> SuperMatrix:
    out = ms[0]
    for m in ms[1:]:
        out = smul(out, m)
    return out


def supertranspose(g: SuperMatrix) -> SuperMatrix:
    return SuperMatrix(
        a=g.a, b=g.c, alpha=g.gamma,
        c=g.b, d=g.d, beta=g.delta,
        gamma=-g.alpha, delta=-g.beta, f=g.f,
    )


def berezinian(g: SuperMatrix) -> Supernumber:
    """f^-1 det[(a b / c d) + f^-1 (alpha gamma, alpha delta / beta gamma, beta delta)]."""
    if g.f.body == 0:
        raise NonInvertible("Berezinian needs an invertible f entry")
    finv = g.f.inverse()
    m11 = g.a + finv * (g.alpha * g.gamma)
    m12 = g.b + finv * (g.alpha * g.delta)
    m21 = g.c + finv * (g.beta * g.gamma)
    m22 = g.d + finv * (g.beta * g.delta)
    return finv * (m11 * m22 - m12 * m21)


def osp_inverse(g: SuperMatrix) -> SuperMatrix:
    """g^-1 = J^-1 g^st J, valid for elements of OSp(1|2)."""
    return SuperMatrix(
        a=g.d, b=-g.b, alpha=g.delta,
        c=-g.c, d=g.a, beta=-g.gamma,
        gamma=-g.beta, delta=g.alpha, f=g.f,
    )


@dataclass
class OspReport:
    residuals: dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values())


def osp_check(g: SuperMatrix, tol: float | None = None) -> OspReport:
    """Residual of every defining relation: g^st J g = J, sdet g = 1, and the constraint system."""
    alg = g.alg
    if tol is None:
        tol = 0.0 if alg.exact else 1e-10
    res: dict[str, float] = {}
    try:
        g.check_grading()
        res["grading"] = 0.0
    except GradingError:
        res["grading"] = float("inf")
        return OspReport(res, tol)
    j = J(alg)
    res["stJ"] = (smul(smul(supertranspose(g), j), g) - j).max_abs()
    try:
        res["sdet"] = (berezinian(g) - 1).max_abs()
    except NonInvertible:
        res["sdet"] = float("inf")
    a, b, c, d, f = g.a, g.b, g.c, g.d, g.f
    al, be, ga, de = g.alpha, g.beta, g.gamma, g.delta
    res["alpha"] = (al - (b * ga - a * de)).max_abs()
    res["beta"] = (be - (d * ga - c * de)).max_abs()
    res["f"] = (f - (1 + al * be)).max_abs()
    res["gamma"] = (ga - (a * be - c * al)).max_abs()
    res["delta"] = (de - (b * be - d * al)).max_abs()
    if f.body != 0:
        res["finv"] = (f.inverse() - (a * d - b * c)).max_abs()
    else:
        res["finv"] = float("inf")
    return OspReport(res, tol)


def require_osp(g: SuperMatrix, tol: float | None = None) -> None:
    rep = osp_check(g, tol)
    if not rep.passed:
        bad = {k: v for k, v in rep.residuals.items() if v > rep.tol}
        raise OspInvariantError(f"not an OSp(1|2) element: {bad}")


def u_gen(alpha: Supernumber, beta: Supernumber) -> SuperMatrix:
    """u(alpha, beta): the purely fermionic factor of OSp(1|2)."""
    if not alpha.is_odd() or not beta.is_odd():
        raise ParityError("u_gen needs odd arguments")
    ab = alpha * beta
    diag = 1 - ab / 2
    zero = alpha.alg.zero()
    return SuperMatrix(
        a=diag, b=zero, alpha=alpha,
        c=zero, d=diag, beta=beta,
        gamma=beta, delta=-alpha, f=1 + ab,
    )


def embed_sl2(a, b, c, d, alg: Algebra | None = None, tol: float | None = None) -> SuperMatrix:
    """The inclusion SL(2, R_*[0]) < OSp(1|2)."""
    if alg is None:
        alg = next(x.alg for x in (a, b, c, d) if isinstance(x, Supernumber))
    a, b, c, d = (Supernumber.lift(alg, x) for x in (a, b, c, d))
    for name, x in zip("abcd", (a, b, c, d)):
        if not x.is_even():
            raise ParityError(f"embed_sl2 entry {name} must be even")
    if tol is None:
        tol = 0.0 if alg.exact else 1e-10
    det = a * d - b * c
    if (det - 1).max_abs() > tol:
        raise DeterminantNotOne(f"ad - bc = {det}")
    zero = alg.zero()
    one = alg.one()
    return SuperMatrix(a, b, zero, c, d, zero, zero, zero, one)


@dataclass
class Factorization:
    sl2: SuperMatrix
    fermionic: SuperMatrix
    alpha: Supernumber
    beta: Supernumber
    # right-ordered variant: g = u(alpha_r, beta_r) * sl2
    right_fermionic: SuperMatrix
    residual: float
    right_residual: float


def osp_factor(g: SuperMatrix, tol: float | None = None) -> Factorization:
    """Split g = embed_sl2(a,b,c,d) * u(alpha, beta) and the right-ordered form.

    The third row of embed * u is (beta, -alpha, 1 + alpha beta), so alpha and
    beta are read off there; peeling u leaves the bosonic block.
    """
    alg = g.alg
    if tol is None:
        tol = 0.0 if alg.exact else 1e-10
    require_osp(g, max(tol, 1e-9) if not alg.exact else 0.0)
    alpha = -g.delta
    beta = g.gamma
    u = u_gen(alpha, beta)
    rest = smul(g, osp_inverse(u))
    off = max(rest.alpha.max_abs(), rest.beta.max_abs(), rest.gamma.max_abs(),
              rest.delta.max_abs(), (rest.f - 1).max_abs())
    if off > max(tol, 1e-9 if not alg.exact else 0.0):
        raise OspInvariantError(f"remainder is not bosonic (residual {off})")
    sl2 = embed_sl2(rest.a, rest.b, rest.c, rest.d, alg=alg, tol=max(tol, 1e-9) if not alg.exact else 0.0)
    residual = (smul(sl2, u) - g).max_abs()
    alpha_r = rest.a * alpha + rest.b * beta
    beta_r = rest.c * alpha + rest.d * beta
    ur = u_gen(alpha_r, beta_r)
    right_residual = (smul(ur, sl2) - g).max_abs()
    return Factorization(sl2, u, alpha, beta, ur, residual, right_residual)


def supermatrix_to_json(g: SuperMatrix) -> dict:
    from .textio import supernumber_to_json

    return {k: supernumber_to_json(v) for k, v in g.entries().items()}


def supermatrix_from_json(obj: dict, alg: Algebra) -> SuperMatrix:
    from .textio import supernumber_from_json
    from .errors import ParseError

    names = [fl.name for fl in fields(SuperMatrix)]
    missing = [n for n in names if n not in obj]
    if missing:
        raise ParseError(f"supermatrix JSON missing entries {missing}")
    return SuperMatrix(**{n: supernumber_from_json(obj[n], alg) for n in names})
