"""Pairs of supergeodesics: frames, intersection, angles, common perpendiculars.

The working frame for a geodesic L = L(u, v) is (d, e, f) with e = u + v,
f = u - v carrying odd parts (phi, 0) and (0, psi) and d bosonic, all three
isotropic with pairwise pairings 2.  Any L can be moved into that shape by an
OSp(1|2) element (:func:`normalize_general`); every quantity here is either
invariant under that move or transported back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConditionResidualAmbiguous,
    DegenerateFrame,
    NonGeneric,
    NotIntersecting,
    NotParallel,
    ResidualTooLarge,
    UltraparallelNoPerpendicular,
)
from .geodesic import Geodesic, act_geodesic, point_from_tanh, through, unit_tangent
from .grassmann import Algebra, Supernumber, analytic_apply
from .minkowski import SuperVector, act, inner
from .superlinalg import SuperMatrix, embed_sl2, identity, smul, u_gen

PRE_ROTATIONS = (math.pi / 7, math.pi / 3, math.pi / 2)
GENERIC_MIN = 1e-6
WELL_CONDITIONED = 0.1


def _tol(alg: Algebra, tol):
    if tol is not None:
        return tol
    return 0.0 if alg.exact else 1e-9


def _even(v: SuperVector) -> tuple[Supernumber, Supernumber, Supernumber]:
    return (v.x1, v.x2, v.y)


def _bos_inner(p, q) -> Supernumber:
    return (p[0] * q[1] + q[0] * p[1]) / 2 - p[2] * q[2]


# ---------------------------------------------------------------- frames


@dataclass(frozen=True)
class Frame:
    d: SuperVector
    e: SuperVector
    f: SuperVector
    phi: Supernumber
    psi: Supernumber

    def residuals(self) -> dict[str, float]:
        d, e, f = self.d, self.e, self.f
        return {
            "dd": inner(d, d).max_abs(),
            "ee": inner(e, e).max_abs(),
            "ff": inner(f, f).max_abs(),
            "de": (inner(d, e) - 2).max_abs(),
            "ef": (inner(e, f) - 2).max_abs(),
            "fd": (inner(f, d) - 2).max_abs(),
            "shape": max(d.phi.max_abs(), d.psi.max_abs(), e.psi.max_abs(), f.phi.max_abs()),
        }


def _rotation(alg: Algebra, angle: float) -> SuperMatrix:
    if alg.exact:
        # rational point on the unit circle closest to the requested angle
        t = Fraction(math.tan(angle / 2)).limit_denominator(64)
        c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
    else:
        c, s = math.cos(angle), math.sin(angle)
    return embed_sl2(c, -s, s, c, alg=alg)


def _shape_defect(e: SuperVector, f: SuperVector) -> float:
    return max(e.psi.max_abs(), f.phi.max_abs())


def _normalizer_matrix(e: SuperVector, f: SuperVector):
    """Linear part of the normalizing system and its relative conditioning."""
    m = ((e.y, e.x2), (f.x1, f.y))
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    scale = (abs(e.x1.body) + abs(e.x2.body) + abs(e.y.body)) * (abs(f.x1.body) + abs(f.x2.body) + abs(f.y.body))
    return m, det, abs(det.body) / max(scale, 1e-300)


def _solve_fermionic_normalizer(e: SuperVector, f: SuperVector, tol: float, max_iter: int):
    """u(alpha, beta) with act(u, e).psi = 0 and act(u, f).phi = 0.

    To first order act(u(alpha, beta), p) shifts psi by y alpha + x2 beta and phi
    by x1 alpha + y beta; the remaining terms are of higher generator degree, so
    a Newton iteration on the linear part terminates after finitely many steps.
    """
    ((m11, m12), (m21, m22)), det, _ = _normalizer_matrix(e, f)
    dinv = det.inverse()
    alg = e.alg
    alpha, beta = alg.zero(), alg.zero()
    for _ in range(max_iter):
        g = u_gen(alpha, beta)
        r1 = act(g, e).psi
        r2 = act(g, f).phi
        if max(r1.max_abs(), r2.max_abs()) <= tol:
            return g
        # (alpha, beta) -= M^-1 (r1, r2)
        alpha = alpha - dinv * (m22 * r1 - m12 * r2)
        beta = beta - dinv * (m11 * r2 - m21 * r1)
    g = u_gen(alpha, beta)
    if _shape_defect(act(g, e), act(g, f)) <= tol:
        return g
    return None


def normalize_general(e: SuperVector, f: SuperVector, tol: float | None = None) -> SuperMatrix:
    """OSp element g with act(g, e) of odd shape (*, 0) and act(g, f) of shape (0, *).

    Candidates are the identity followed by the fixed pre-rotations; the first
    whose linear system is well conditioned is used, otherwise the best one
    that is at least generic.  The output is always checked, never assumed.
    """
    alg = e.alg
    tol = _tol(alg, tol)
    if _shape_defect(e, f) <= tol:
        return identity(alg)
    cands = []
    for angle in (None,) + PRE_ROTATIONS:
        r = identity(alg) if angle is None else _rotation(alg, angle)
        e1, f1 = act(r, e), act(r, f)
        cond = _normalizer_matrix(e1, f1)[2]
        if cond >= WELL_CONDITIONED:
            cands = [(cond, r, e1, f1)]
            break
        if cond > GENERIC_MIN:
            cands.append((cond, r, e1, f1))
    cands.sort(key=lambda c: -c[0])
    for _, r, e1, f1 in cands:
        u = _solve_fermionic_normalizer(e1, f1, tol, alg.gens + 4)
        if u is None:
            continue
        g = smul(r, u)
        if _shape_defect(act(g, e), act(g, f)) <= tol:
            return g
    raise NonGeneric("no pre-rotation makes the normalizing system solvable")


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _lower(p):
    # G p for G = [[0, 1/2, 0], [1/2, 0, 0], [0, 0, -1]]
    return (p[1] / 2, p[0] / 2, -p[2])


def complete_frame(e: SuperVector, f: SuperVector, tol: float | None = None) -> Frame:
    """Bosonic isotropic d with <d,e> = <d,f> = 2 for e, f already in frame shape.

    d = lam (e_even + f_even) + s n, n spanning the orthogonal complement of
    the even parts; of the two signs of s the one with larger body(y) wins.
    """
    alg = e.alg
    tol = _tol(alg, tol)
    if _shape_defect(e, f) > tol:
        raise DegenerateFrame("e, f are not in frame shape; normalize first")
    ee, fe = _even(e), _even(f)
    w = _bos_inner(ee, fe)  # = 2 - phi psi
    if abs(w.body) <= 1e-12:
        raise DegenerateFrame("e and f share a ray")
    lam = 2 * w.inverse()
    n = _cross(_lower(ee), _lower(fe))
    qn = _bos_inner(n, n)
    if qn.body >= 0:
        raise DegenerateFrame("even parts of e, f do not span a Lorentzian plane")
    s2 = -(2 * lam * lam * w) * qn.inverse()
    s = analytic_apply("sqrt", s2)
    cands = []
    for sign in (1, -1):
        comps = tuple(lam * (a + b) + sign * s * c for a, b, c in zip(ee, fe, n))
        cands.append(comps)
    bodies = [tuple(c.body for c in comps) for comps in cands]
    if abs(bodies[0][2] - bodies[1][2]) > 1e-12:
        k = 0 if bodies[0][2] > bodies[1][2] else 1
    else:
        if bodies[0] == bodies[1]:
            raise DegenerateFrame("the two choices of d coincide")
        k = 0 if bodies[0] > bodies[1] else 1
    zero = alg.zero()
    d = SuperVector(*cands[k], zero, zero)
    iso = inner(d, d).max_abs() / max(1.0, d.max_abs()) ** 2
    if (d.x1 + d.x2).body <= 0 or iso > (max(tol, 1e-9) if not alg.exact else 0.0):
        raise DegenerateFrame("d left the positive light cone")
    return Frame(d, e, f, e.phi, f.psi)


@dataclass(frozen=True)
class FrameCoords:
    a: Supernumber
    b: Supernumber
    c: Supernumber
    alpha: Supernumber
    beta: Supernumber

    def reassemble(self, fr: Frame) -> SuperVector:
        zero = self.a.alg.zero()
        return fr.d * self.a + fr.e * self.b + fr.f * self.c + SuperVector(zero, zero, zero, self.alpha, self.beta)


def _solve3(m, r):
    """Cramer's rule over commuting even supernumbers."""
    def det3(x):
        return (x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1])
                - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
                + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]))
    dm = det3(m)
    if dm.body == 0:
        raise DegenerateFrame("frame matrix is singular")
    dinv = dm.inverse()
    out = []
    for col in range(3):
        mc = [[r[i] if j == col else m[i][j] for j in range(3)] for i in range(3)]
        out.append(det3(mc) * dinv)
    return out


def decompose_in_frame(w: SuperVector, fr: Frame, tol: float | None = None) -> FrameCoords:
    """w = a d + b e + c f + (0,0,0 | alpha, beta); the decomposition is unique."""
    alg = w.alg
    tol = _tol(alg, tol)
    phi, psi = fr.phi, fr.psi
    pp = phi * psi
    zero, two = alg.zero(), alg.one() * 2
    m = [[zero, two, two], [two, zero, two - pp], [two, two - pp, zero]]
    r = [inner(w, fr.d), inner(w, fr.e) - phi * w.psi, inner(w, fr.f) - w.phi * psi]
    a, b, c = _solve3(m, r)
    coords = FrameCoords(a, b, c, w.phi - b * phi, w.psi - c * psi)
    resid = (coords.reassemble(fr) - w).max_abs()
    if resid > max(tol, 1e-9 if not alg.exact else 0.0) * max(1.0, w.max_abs()):
        raise ResidualTooLarge(f"frame decomposition residual {resid:.3g}")
    return coords


# ---------------------------------------------------------------- coefficients


@dataclass
class PairCoefficients:
    A: Supernumber
    B: Supernumber
    C: Supernumber
    D: Supernumber
    I: Supernumber
    J: Supernumber
    alpha: Supernumber
    beta: Supernumber
    xi: Supernumber
    eta: Supernumber
    frame: Frame
    g: SuperMatrix
    L: Geodesic  # both geodesics after transport by g
    Lp: Geodesic
    u_coords: FrameCoords
    v_coords: FrameCoords
    # I, J from the closed square-root forms (positive root), None when the body is negative
    I_closed: Supernumber | None = None
    J_closed: Supernumber | None = None

    @property
    def phi(self):
        return self.frame.phi

    @property
    def psi(self):
        return self.frame.psi

    @property
    def X(self):
        return self.A * self.A - self.B * self.B - 1

    @property
    def Y(self):
        return self.C * self.C - self.D * self.D + 1


def closed_root(base: Supernumber, correction: Supernumber) -> Supernumber | None:
    """sqrt(base + correction) as an even supernumber, None if the body is negative.

    Equals base^(1/2) [1 + (correction/2)/base] whenever base is invertible,
    because correction squares to zero.
    """
    s = base + correction
    if s.body < 0:
        return None
    if s.body == 0:
        return None if not s.soul.is_zero() else s.alg.zero()
    return analytic_apply("sqrt", s)


def pair_coefficients(L: Geodesic, Lp: Geodesic, tol: float | None = None) -> PairCoefficients:
    """Frame data of Lp relative to L.

    I and J are read off the frame coordinates, I = 2a + alpha psi + phi beta and
    J = -(2x + xi psi + phi eta), then both multiplied by the sign of body(J) so
    that J has positive body.  Their squares are the closed forms
    (A^2-B^2-1) + 2 alpha beta (4 + phi psi) and (C^2-D^2+1) + 2 xi eta (4 + phi psi).
    """
    alg = L.alg
    tol = _tol(alg, tol)
    g = normalize_general(L.e, L.f, tol)
    Ln, Lpn = act_geodesic(g, L), act_geodesic(g, Lp)
    fr = complete_frame(Ln.e, Ln.f, tol)
    uc = decompose_in_frame(Lpn.u, fr, tol)
    vc = decompose_in_frame(Lpn.v, fr, tol)
    phi, psi = fr.phi, fr.psi
    alpha, beta = uc.alpha / 2, uc.beta / 2
    xi, eta = vc.alpha / 2, vc.beta / 2
    A, B = inner(Ln.u, Lpn.u), inner(Ln.v, Lpn.u)
    C, D = inner(Ln.u, Lpn.v), inner(Ln.v, Lpn.v)
    I = 2 * uc.a + alpha * psi + phi * beta
    J = -(2 * vc.a + xi * psi + phi * eta)
    if J.body < 0:
        I, J = -I, -J
    k = 4 + phi * psi
    pc = PairCoefficients(A, B, C, D, I, J, alpha, beta, xi, eta, fr, g, Ln, Lpn, uc, vc)
    if not alg.exact:
        pc.I_closed = closed_root(pc.X, 2 * alpha * beta * k)
        pc.J_closed = closed_root(pc.Y, 2 * xi * eta * k)
    return pc


def intersection_conditions(pc: PairCoefficients) -> dict[str, float]:
    """Residuals of the intersection conditions.

    'gap' is body(Y - X), which must be positive.  The equalities are reported
    as max coefficient magnitudes divided by s^k, where s = max(1, |A|..|J|)
    and k is the degree of the condition in A..J, so that the verdict does not
    depend on the overall size of the coordinates:

    c2: AC - BD + IJ = (eta alpha + beta xi)(4 + phi psi)
    c3: -2 IJ (AC - BD) = J^2 X + I^2 Y
    c4: J alpha + I xi = 0
    c5: J beta + I eta = 0

    'c4_variant' and 'c5_variant' are diagnostics for the form
    4(J alpha + I xi) = [(A-B)J + (C-D)I] phi and its psi analogue, which does
    not hold at genuine intersections with phi, psi nonzero.
    """
    A, B, C, D, I, J = pc.A, pc.B, pc.C, pc.D, pc.I, pc.J
    al, be, xi, eta, phi, psi = pc.alpha, pc.beta, pc.xi, pc.eta, pc.phi, pc.psi
    X, Y = pc.X, pc.Y
    k = 4 + phi * psi
    s = max(1.0, *(float(abs(z.body)) for z in (A, B, C, D, I, J)))
    return {
        "gap": float((Y - X).body),
        "X_body": float(X.body),
        "c2": (A * C - B * D + I * J - (eta * al + be * xi) * k).max_abs() / s ** 2,
        "c3": (2 * I * J * (A * C - B * D) + J * J * X + I * I * Y).max_abs() / s ** 4,
        "c4": (J * al + I * xi).max_abs() / s,
        "c5": (J * be + I * eta).max_abs() / s,
        "c4_variant": (4 * (J * al + I * xi) - ((A - B) * J + (C - D) * I) * phi).max_abs() / s ** 2,
        "c5_variant": (4 * (J * be + I * eta) - ((A + B) * J + (C + D) * I) * psi).max_abs() / s ** 2,
    }


EQUALITY_CONDITIONS = ("c2", "c3", "c4", "c5")


def _judge(res: dict[str, float], tol: float, gap_tol: float):
    """(passes, ambiguous_names) for a residual dict."""
    ambiguous = []
    ok = True
    band = 10 * tol
    for name in EQUALITY_CONDITIONS:
        r = res[name]
        if r > band:
            ok = False
        elif r > tol:
            ambiguous.append(name)
    g = res["gap"]
    if g <= -gap_tol:
        ok = False
    elif g <= gap_tol:
        ambiguous.append("gap")
    return ok, ambiguous


def angle_cos_pair(pc: PairCoefficients, tol: float | None = None) -> Supernumber:
    """Geometric cosine of the angle at L cap L' from the frame coefficients.

    At the intersection point P, K P = J u' + I v' = (AJ+CI) u - (BJ+DI) v with
    K = (J^2 - I^2)^(1/2), so the unit tangents there are K t' = I u' + J v' and
    K t = (AJ+CI) v - (BJ+DI) u.  Their pairing expands to
    (AD - BC)(J^2 - I^2)/K^2, and the geometric cosine is minus that: BC - AD.
    """
    tol = _tol(pc.A.alg, tol)
    res = intersection_conditions(pc)
    ok, amb = _judge(res, tol, _gap_tol(pc.A.alg, tol))
    if not ok or amb:
        raise NotIntersecting("intersection conditions do not hold")
    return pc.B * pc.C - pc.A * pc.D


def _gap_tol(alg: Algebra, tol: float) -> float:
    return 0.0 if alg.exact else max(tol, 1e-12)


# ---------------------------------------------------------------- verdicts


@dataclass
class Perpendicular:
    tanh_p1: Supernumber
    tanh_p2: Supernumber
    p1: Supernumber | None
    p2: Supernumber | None
    foot1: SuperVector
    foot2: SuperVector
    leg: Geodesic
    cosh_dist: Supernumber
    roots_product: Supernumber | None
    discriminant: Supernumber
    hessian_det: float
    orthogonality: dict[str, float]


@dataclass
class PairVerdict:
    tag: str  # intersecting, parallel, ultraparallel
    point: SuperVector | None = None
    point_alt: SuperVector | None = None
    cos_angle: Supernumber | None = None
    cos_angle_tangent: Supernumber | None = None
    perpendicular: Perpendicular | None = None
    coincident: bool = False
    conditions: dict[str, float] = field(default_factory=dict)
    ambiguous: list[str] = field(default_factory=list)
    dual_check: dict[str, float] | None = None


def _tangent_at(L: Geodesic, P: SuperVector) -> SuperVector:
    # P = cosh q u + sinh q v  =>  <P,u> = cosh q, <P,v> = -sinh q
    return L.v * inner(P, L.u) - L.u * inner(P, L.v)


def intersect(L: Geodesic, Lp: Geodesic, tol: float | None = None) -> PairVerdict:
    """Decide whether L and Lp meet; on success return the point and angle.

    Raises ConditionResidualAmbiguous when a condition lands between tol and
    10 tol (or the gap is within tol of zero) rather than guessing.
    """
    alg = L.alg
    tol = _tol(alg, tol)
    pc = pair_coefficients(L, Lp, tol)
    res = intersection_conditions(pc)
    ok, amb = _judge(res, tol, _gap_tol(alg, tol))
    if amb:
        raise ConditionResidualAmbiguous(f"conditions near the boundary: {amb} ({res})")
    if not ok:
        return PairVerdict("parallel", conditions=res)
    I, J = pc.I, pc.J
    K = analytic_apply("sqrt", J * J - I * I)
    Kinv = K.inverse()
    A, B, C, D = pc.A, pc.B, pc.C, pc.D
    P = (Lp.u * J + Lp.v * I) * Kinv
    P_alt = (L.u * (A * J + C * I) - L.v * (B * J + D * I)) * Kinv
    cos_formula = angle_cos_pair(pc, tol)
    cos_tangent = -inner(_tangent_at(L, P), _tangent_at(Lp, P))
    return PairVerdict("intersecting", point=P, point_alt=P_alt, cos_angle=cos_formula,
                       cos_angle_tangent=cos_tangent, conditions=res)


def _same_ray(p: SuperVector, q: SuperVector, tol: float) -> bool:
    a = [float(x) for x in p.body()]
    b = [float(x) for x in q.body()]
    cr = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(x * x for x in b))
    if na == 0 or nb == 0:
        return False
    dot = sum(x * y for x, y in zip(a, b))
    return dot > 0 and max(abs(x) for x in cr) <= max(tol, 1e-12) * na * nb


def _bosonic_frame(L: Geodesic):
    """Body-level (e, f, d) with the y-larger choice of d."""
    e = tuple(float(x) for x in L.e.body())
    f = tuple(float(x) for x in L.f.body())
    w = 0.5 * (e[0] * f[1] + f[0] * e[1]) - e[2] * f[2]
    lam = 2 / w
    ge = (e[1] / 2, e[0] / 2, -e[2])
    gf = (f[1] / 2, f[0] / 2, -f[2])
    n = (ge[1] * gf[2] - ge[2] * gf[1], ge[2] * gf[0] - ge[0] * gf[2], ge[0] * gf[1] - ge[1] * gf[0])
    qn = n[0] * n[1] - n[2] * n[2]
    s = math.sqrt(-2 * lam * lam * w / qn)
    ds = [tuple(lam * (a + b) + sg * s * c for a, b, c in zip(e, f, n)) for sg in (1, -1)]
    d = max(ds, key=lambda t: (t[2], t))
    return e, f, d


def dual_vector(L: Geodesic) -> tuple[float, float, float]:
    """Classical dual h = (e + f - d)/2 of the body geodesic; <h,h> = -1, h orthogonal to u, v."""
    e, f, d = _bosonic_frame(L)
    return tuple((a + b - c) / 2 for a, b, c in zip(e, f, d))


def _bos(p, q) -> float:
    return 0.5 * (p[0] * q[1] + q[0] * p[1]) - p[2] * q[2]


def classify_pair(L: Geodesic, Lp: Geodesic, tol: float | None = None) -> PairVerdict:
    """ultraparallel / intersecting / parallel, never raising on ambiguity."""
    alg = L.alg
    tol = _tol(alg, tol)
    ray_tol = max(tol, 1e-9)
    shared = [(x, y) for x in ("e", "f") for y in ("e", "f")
              if _same_ray(getattr(L, x), getattr(Lp, y), ray_tol)]
    if shared:
        return PairVerdict("ultraparallel", coincident=len(shared) >= 2)
    try:
        verdict = intersect(L, Lp, tol)
    except ConditionResidualAmbiguous:
        pc = pair_coefficients(L, Lp, tol)
        res = intersection_conditions(pc)
        _, amb = _judge(res, tol, _gap_tol(alg, tol))
        verdict = PairVerdict("parallel", conditions=res, ambiguous=amb)
    bosonic = all(x.is_bosonic() for x in (L.u, L.v, Lp.u, Lp.v))
    if bosonic and not alg.exact:
        h1, h2 = dual_vector(L), dual_vector(Lp)
        hh2 = _bos(h1, h2) ** 2
        if verdict.tag == "intersecting":
            ref = float(verdict.cos_angle.body) ** 2
            verdict.dual_check = {"h1h2_sq": hh2, "cos_sq": ref, "residual": abs(hh2 - ref)}
        elif not verdict.ambiguous:
            try:
                perp = common_perpendicular(L, Lp, tol, verdict=verdict)
                verdict.perpendicular = perp
                ref = float(perp.cosh_dist.body) ** 2
                verdict.dual_check = {"h1h2_sq": hh2, "cosh_sq": ref, "residual": abs(hh2 - ref)}
            except UltraparallelNoPerpendicular:
                verdict.dual_check = {"h1h2_sq": hh2}
    return verdict


def common_perpendicular(L1: Geodesic, L2: Geodesic, tol: float | None = None,
                         verdict: PairVerdict | None = None) -> Perpendicular:
    """The unique geodesic segment orthogonal to both of two parallel geodesics.

    With a = <u1,u2>, b = <v1,u2>, c = <u1,v2>, d = <v1,v2> the critical point
    of <x1(p1), x2(p2)> has T = tanh p1 solving (ab-cd) T^2 + (a^2+b^2-c^2-d^2) T
    + (ab-cd) = 0 (roots multiply to 1; the one with |body| < 1 is taken) and
    tanh p2 = -(dT + c)/(bT + a).
    """
    alg = L1.alg
    tol = _tol(alg, tol)
    if verdict is None:
        verdict = classify_pair(L1, L2, tol)
    if verdict.tag != "parallel":
        raise NotParallel(f"pair is {verdict.tag}")
    a, b = inner(L1.u, L2.u), inner(L1.v, L2.u)
    c, d = inner(L1.u, L2.v), inner(L1.v, L2.v)
    factors = (a - b - c + d, a - b + c - d, a + b - c - d, a + b + c + d)
    if any(fac.body <= 0 for fac in factors):
        raise UltraparallelNoPerpendicular("a light-cone pairing is not positive")
    k = a * b - c * d
    m = a * a + b * b - c * c - d * d
    disc = m * m - 4 * k * k
    if disc.body <= 0:
        raise UltraparallelNoPerpendicular(f"discriminant body {disc.body} is not positive")
    root = analytic_apply("sqrt", disc)
    sgn = 1 if m.body >= 0 else -1
    q = m + sgn * root
    T = -2 * k * q.inverse()
    roots_product = None
    if k.body != 0:
        T_other = -q * (2 * k).inverse()
        roots_product = T * T_other
    if abs(T.body) >= 1:
        raise UltraparallelNoPerpendicular("no root with |tanh| < 1")
    T2 = -(d * T + c) * (b * T + a).inverse()
    F1 = point_from_tanh(L1, T)
    F2 = point_from_tanh(L2, T2)
    cosh_dist = inner(F1, F2)
    leg = through(F1, F2, None if not alg.exact else 0.0)
    t1 = _tangent_at(L1, F1)
    t2 = _tangent_at(L2, F2)
    ortho = {
        "at_foot1": inner(t1, leg.v).max_abs(),
        "at_foot2": inner(t2, unit_tangent(F2, F1)).max_abs(),
    }
    p1 = p2 = None
    if not alg.exact:
        p1 = analytic_apply("arctanh", T)
        p2 = analytic_apply("arctanh", T2)
    hess = _hessian_det(float(a.body), float(b.body), float(c.body), float(d.body),
                        float(T.body), float(T2.body))
    return Perpendicular(T, T2, p1, p2, F1, F2, leg, cosh_dist, roots_product, disc, hess, ortho)


def _hessian_det(a, b, c, d, t1, t2) -> float:
    """Second-derivative test of (p1, p2) -> cosh d at the critical point, on bodies."""
    p1, p2 = math.atanh(t1), math.atanh(t2)
    ch1, sh1, ch2, sh2 = math.cosh(p1), math.sinh(p1), math.cosh(p2), math.sinh(p2)
    f = a * ch1 * ch2 + b * sh1 * ch2 + c * ch1 * sh2 + d * sh1 * sh2
    f12 = sh2 * (b * ch1 + a * sh1) + ch2 * (d * ch1 + c * sh1)
    return f * f - f12 * f12


def hessian_closed_form(a, b, c, d, t1, t2) -> float:
    """cosh(p1+p2) cosh(p1-p2) Delta/(a^2 - d^2): the factored Hessian determinant."""
    p1, p2 = math.atanh(t1), math.atanh(t2)
    delta = (a - b - c + d) * (a - b + c - d) * (a + b - c - d) * (a + b + c + d)
    return math.cosh(p1 + p2) * math.cosh(p1 - p2) * delta / (a * a - d * d)


def verdict_to_json(v: PairVerdict) -> dict:
    from .geodesic import geodesic_to_json
    from .minkowski import vector_to_json
    from .textio import supernumber_to_json

    out: dict = {"tag": v.tag}
    if v.point is not None:
        out["point"] = vector_to_json(v.point)
        out["point_alt"] = vector_to_json(v.point_alt)
    if v.cos_angle is not None:
        out["cos_angle"] = supernumber_to_json(v.cos_angle)
        out["cos_angle_tangent"] = supernumber_to_json(v.cos_angle_tangent)
    if v.perpendicular is not None:
        p = v.perpendicular
        out["perpendicular"] = {
            "tanh_p1": supernumber_to_json(p.tanh_p1),
            "tanh_p2": supernumber_to_json(p.tanh_p2),
            "p1": supernumber_to_json(p.p1) if p.p1 is not None else None,
            "p2": supernumber_to_json(p.p2) if p.p2 is not None else None,
            "foot1": vector_to_json(p.foot1),
            "foot2": vector_to_json(p.foot2),
            "leg": geodesic_to_json(p.leg),
            "cosh_dist": supernumber_to_json(p.cosh_dist),
            "discriminant": supernumber_to_json(p.discriminant),
            "hessian_det": p.hessian_det,
            "orthogonality": p.orthogonality,
        }
    if v.tag == "ultraparallel":
        out["coincident"] = v.coincident
    if v.conditions:
        out["conditions"] = v.conditions
    if v.ambiguous:
        out["ambiguous"] = v.ambiguous
    if v.dual_check is not None:
        out["dual_check"] = v.dual_check
    return out


__all__ = [
    "Frame", "FrameCoords", "PairCoefficients", "PairVerdict", "Perpendicular",
    "normalize_general", "complete_frame", "decompose_in_frame", "pair_coefficients",
    "closed_root", "intersection_conditions", "intersect", "angle_cos_pair",
    "classify_pair", "common_perpendicular", "dual_vector", "verdict_to_json",
]
