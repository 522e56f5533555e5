"""Property suites run by ``superhyp selftest`` and by the acceptance tests.

Each suite returns a list of :class:`Check` records (worst residual against a
tolerance).  Trial counts scale from one knob: with ``trials = 1000`` the
kernel suite draws 10^4 product pairs, the group, action and triangle suites
10^3 samples, and the geodesic-pair suites 10^2.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .geodesic import Geodesic, distance
from .grassmann import Algebra, Supernumber, analytic_apply
from .minkowski import SuperVector, act, discriminant_of, inner, to_upper_half_plane, vector
from .oracles import classical_angle_cos, mobius, word_multiply
from .pairs import (
    classify_pair,
    common_perpendicular,
    intersect,
    intersection_conditions,
    pair_coefficients,
)
from .sampling import (
    crossing_pair,
    intersecting_pair,
    parallel_pair,
    perturb_geodesic,
    random_ih_point,
    random_odd,
    random_osp,
    random_sl2,
    random_soul,
    random_supernumber,
)
from .superlinalg import berezinian, embed_sl2, osp_check, osp_factor, smul, u_gen
from .trig import _sinh_from_cosh, random_triangle, triangle_report


@dataclass
class SelftestConfig:
    gens: int = 4
    trials: int = 1000
    seed: int = 7
    tol: float = 1e-9


@dataclass
class Check:
    suite: str
    name: str
    value: float
    tol: float
    passed: bool
    trials: int = 1
    note: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f" ({self.note})" if self.note else ""
        return f"[{mark}] {self.suite}: {self.name}: {self.value:.3g} vs {self.tol:.3g} over {self.trials}{extra}"

    def to_json(self) -> dict:
        return asdict(self)


def _le(suite, name, value, tol, trials=1, note=""):
    return Check(suite, name, float(value), tol, value <= tol, trials, note)


def _ge(suite, name, value, bound, trials=1, note=""):
    return Check(suite, name, float(value), bound, value >= bound, trials, note)


def _exact(suite, name, ok: bool, trials=1, note=""):
    return Check(suite, name, 0.0 if ok else 1.0, 0.0, ok, trials, note)


def _rng(cfg: SelftestConfig, salt: int) -> random.Random:
    return random.Random(cfg.seed * 1_000_003 + salt)


# ---------------------------------------------------------------- suites


def suite_kernel(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 1)
    qa = Algebra(cfg.gens, "rational")
    fa = Algebra(cfg.gens, "float")
    n_mul = 10 * cfg.trials
    mism = sum(word_multiply(a, b) != a * b
               for a, b in ((random_supernumber(rng, qa), random_supernumber(rng, qa)) for _ in range(n_mul)))

    inv_bad = sqrt_bad = 0
    inv_f = sqrt_f = 0.0
    for _ in range(cfg.trials):
        a = random_supernumber(rng, qa)
        if a.body == 0:
            a = a + 1
        inv_bad += (a * a.inverse() != qa.one())
        root = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        s = root * root + random_soul(rng, qa, 1.0, 8)
        r = analytic_apply("sqrt", s)
        sqrt_bad += (r * r != s)

        b = random_supernumber(rng, fa)
        if abs(b.body) < 0.1:
            b = b + 1
        inv_f = max(inv_f, (b * b.inverse() - 1).max_abs())
        t = rng.uniform(0.5, 3.0) + random_soul(rng, fa, 1.0, 8)
        rt = analytic_apply("sqrt", t)
        sqrt_f = max(sqrt_f, (rt * rt - t).max_abs())
    return [
        _exact("kernel", "multiply vs word oracle (rational)", mism == 0, n_mul, f"{mism} mismatches"),
        _exact("kernel", "invert round-trip (rational)", inv_bad == 0, cfg.trials),
        _exact("kernel", "sqrt round-trip (rational)", sqrt_bad == 0, cfg.trials),
        _le("kernel", "invert round-trip (float)", inv_f, 1e-12, cfg.trials),
        _le("kernel", "sqrt round-trip (float)", sqrt_f, 1e-12, cfg.trials),
    ]


def suite_osp(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 2)
    fa = Algebra(cfg.gens, "float")
    worst_check = worst_ber = worst_factor = 0.0
    for _ in range(cfg.trials):
        g = random_osp(rng, fa)
        h = random_osp(rng, fa)
        worst_check = max(worst_check, osp_check(g, 1e-10).worst)
        ber = (berezinian(smul(g, h)) - berezinian(g) * berezinian(h)).max_abs()
        worst_ber = max(worst_ber, ber)
        fac = osp_factor(g)
        worst_factor = max(worst_factor, fac.residual, fac.right_residual)
    qa = Algebra(max(cfg.gens, 2), "rational")
    ber_u = berezinian(u_gen(qa.e(1), qa.e(2)))
    return [
        _le("osp", "osp_check residual", worst_check, 1e-10, cfg.trials),
        _le("osp", "Berezinian multiplicativity", worst_ber, 1e-10, cfg.trials),
        _le("osp", "factorization round-trip", worst_factor, 1e-10, cfg.trials),
        _exact("osp", "berezinian(u(e1,e2)) = 1 exactly", ber_u == qa.one()),
    ]


def suite_action(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 3)
    fa = Algebra(cfg.gens, "float")
    worst = 0.0
    for _ in range(cfg.trials):
        g = random_osp(rng, fa)
        p = random_ih_point(rng, fa)
        q = random_ih_point(rng, fa)
        worst = max(worst, (inner(act(g, p), act(g, q)) - inner(p, q)).max_abs())

    qa = Algebra(cfg.gens, "rational")
    n_exact = max(1, cfg.trials // 10)
    disc_bad = 0
    for _ in range(n_exact):
        g = random_osp(rng, qa)
        p = random_ih_point(rng, qa)
        disc_bad += discriminant_of(act(g, p)) != discriminant_of(p)
    base = vector(qa, 1, 1, 0)
    img = act(embed_sl2(1, 1, 0, 1, alg=qa), base)
    return [
        _le("action", "isometry <gp,gq> - <p,q>", worst, cfg.tol, cfg.trials),
        _exact("action", "discriminant invariance (rational)", disc_bad == 0, n_exact),
        _exact("action", "act(embed_sl2(1,1,0,1), base) = (1,2,1|0,0)", img == vector(qa, 1, 2, 1)),
    ]


def suite_triangles(cfg: SelftestConfig) -> list[Check]:
    fa = Algebra(cfg.gens, "float")
    worst = {"law_of_cosines": 0.0, "dual_law_of_cosines": 0.0, "law_of_sines": 0.0}
    material = 0
    for k in range(cfg.trials):
        T = random_triangle(cfg.seed * 100_003 + k, 0.5, fa)
        r = triangle_report(T)
        worst["law_of_cosines"] = max(worst["law_of_cosines"], r.residuals["law_of_cosines"].max_abs())
        worst["dual_law_of_cosines"] = max(worst["dual_law_of_cosines"], r.residuals["dual_law_of_cosines"].max_abs())
        worst["law_of_sines"] = max(worst["law_of_sines"], r.residuals["law_of_sines_ab"].max_abs(),
                                    r.residuals["law_of_sines_bc"].max_abs())
        # negative control: body-only angle cosine in the law of cosines
        chA, chB, chC = r.cosh_sides
        ca = r.cos_angles[0]
        shB, shC = _sinh_from_cosh(chB), _sinh_from_cosh(chC)
        bos = chA - (chB * chC - shB * shC * ca.body)
        material += bos.max_abs() > 1e-3
    frac = material / cfg.trials
    return [
        _le("triangles", "law of cosines", worst["law_of_cosines"], cfg.tol, cfg.trials),
        _le("triangles", "dual law of cosines", worst["dual_law_of_cosines"], cfg.tol, cfg.trials),
        _le("triangles", "law of sines", worst["law_of_sines"], cfg.tol, cfg.trials),
        _ge("triangles", "body-only cosines miss by > 1e-3 (fraction)", frac, 0.95, cfg.trials),
    ]


def _six_product(pc) -> Supernumber:
    return pc.alpha * pc.beta * pc.xi * pc.eta * pc.phi * pc.psi


def suite_intersection(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 5)
    fa = Algebra(cfg.gens, "float")
    n = max(1, cfg.trials // 10)
    not_found = 0
    w_point = w_alt = w_cos = 0.0
    nonzero_six = 0
    variant_fail = 0
    for family in ("osp-image", "crossing"):
        for _ in range(n):
            if family == "osp-image":
                L, Lp, P, _g = intersecting_pair(rng, fa, spread=0.6)
            else:
                L, Lp, P = crossing_pair(rng, fa)
            try:
                v = intersect(L, Lp, cfg.tol)
            except Exception:
                not_found += 1
                continue
            if v.tag != "intersecting":
                not_found += 1
                continue
            w_point = max(w_point, (v.point - P).max_abs())
            w_alt = max(w_alt, (v.point - v.point_alt).max_abs())
            w_cos = max(w_cos, (v.cos_angle - v.cos_angle_tangent).max_abs())
            pc = pair_coefficients(L, Lp, cfg.tol)
            nonzero_six += not _six_product(pc).is_zero()
            res = intersection_conditions(pc)
            variant_fail += max(res["c4_variant"], res["c5_variant"]) > 10 * cfg.tol
    qa = Algebra(cfg.gens, "rational")
    exact_bad = 0
    n_exact = max(1, n // 4)
    for _ in range(n_exact):
        L, Lp, P, _g = intersecting_pair(rng, qa)
        v = intersect(L, Lp)
        pc = pair_coefficients(L, Lp)
        exact_bad += v.tag != "intersecting" or v.point != P or not _six_product(pc).is_zero()
    total = 2 * n
    return [
        _exact("intersection", "all conditions pass on constructed pairs", not_found == 0, total,
               f"{not_found} rejected"),
        _le("intersection", "two point formulas agree", w_alt, 1e-10, total),
        _le("intersection", "recovered point vs construction", w_point, cfg.tol, total),
        _le("intersection", "frame cosine vs tangent cosine", w_cos, cfg.tol, total),
        _exact("intersection", "alpha beta xi eta phi psi = 0", nonzero_six == 0, total),
        _exact("intersection", "rational pairs: exact point and zero product", exact_bad == 0, n_exact),
        Check("intersection", "variant odd conditions violated (diagnostic)", variant_fail, 0.0, True, total,
              "informational"),
    ]


def _worked_pair(alg: Algebra):
    L1 = Geodesic(vector(alg, 1, 1, 0), vector(alg, 1, -1, 0))
    L2 = Geodesic(vector(alg, 1, 5, 2), vector(alg, 0, 4, 1))
    return L1, L2


def suite_perpendicular(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 6)
    fa = Algebra(cfg.gens, "float")
    n = max(1, cfg.trials // 10)
    L1, L2 = _worked_pair(fa)
    v = classify_pair(L1, L2, cfg.tol)
    p = v.perpendicular
    checks = [
        _le("perpendicular", "worked pair cosh distance - 2", abs(p.cosh_dist.body - 2), 1e-12),
        _le("perpendicular", "worked pair <h1,h2>^2 - 4", abs(v.dual_check["h1h2_sq"] - 4), 1e-12),
    ]
    w_dual = w_orth = w_roots = 0.0
    for _ in range(n):
        L, Lp = parallel_pair(rng, fa)
        v = classify_pair(L, Lp, cfg.tol)
        q = v.perpendicular
        w_dual = max(w_dual, v.dual_check["residual"])
        w_orth = max(w_orth, *q.orthogonality.values())
        if q.roots_product is not None:
            w_roots = max(w_roots, (q.roots_product - 1).max_abs())
    w_ferm = 0.0
    soul_seen = 0
    for _ in range(n):
        a, b = perturb_geodesic(rng, fa, L1), perturb_geodesic(rng, fa, L2)
        q = common_perpendicular(a, b, cfg.tol)
        w_ferm = max(w_ferm, *q.orthogonality.values())
        if q.roots_product is not None:
            w_roots = max(w_roots, (q.roots_product - 1).max_abs())
        soul_seen += not q.cosh_dist.soul.is_zero()
    checks += [
        _le("perpendicular", "cosh^2 distance vs <h1,h2>^2 (bosonic)", w_dual, cfg.tol, n),
        _le("perpendicular", "leg orthogonality (bosonic)", w_orth, cfg.tol, n),
        _le("perpendicular", "leg orthogonality (fermionic)", w_ferm, cfg.tol, n),
        _le("perpendicular", "quadratic roots multiply to 1", w_roots, 1e-12, 2 * n),
        _exact("perpendicular", "fermionic cosh distance has a soul", soul_seen == n, n),
    ]
    return checks


def suite_bosonic(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 7)
    fa = Algebra(cfg.gens, "float")
    base = vector(fa, 1, 1, 0)
    q = vector(fa, math.e, 1 / math.e, 0)
    d = distance(base, q).d
    c1 = math.cosh(1)
    C = vector(fa, c1, c1, math.sinh(1))
    pyth = inner(q, C)
    z, theta = to_upper_half_plane(base)
    uhp_ok = z == Algebra(cfg.gens, "complex").scalar_(1j) and theta.is_zero()
    n = max(1, cfg.trials // 10)
    w_mob = w_angle = 0.0
    for _ in range(n):
        g = random_sl2(rng, fa, 0.0)
        p = random_ih_point(rng, fa, fermionic_scale=0.0)
        gb = (g.a.body, g.b.body, g.c.body, g.d.body)
        z0, _ = to_upper_half_plane(p)
        z1, _ = to_upper_half_plane(act(g, p))
        w_mob = max(w_mob, abs(mobius(gb, z0.body) - z1.body))
        T = random_triangle(rng.randrange(1 << 30), 0.0, fa)
        A, B, Cv = (tuple(float(x) for x in P.body()) for P in T.vertices)
        r = triangle_report(T)
        w_angle = max(w_angle, abs(r.cos_angles[0].body - classical_angle_cos(A, B, Cv)))
    return [
        _le("bosonic", "distance(base, (e, 1/e, 0)) - 1", abs(d.body - 1), 1e-12),
        _le("bosonic", "Pythagoras cosh a - cosh^2 1", abs(pyth.body - c1 * c1), 1e-12),
        _exact("bosonic", "base point maps to (i, 0)", uhp_ok),
        _le("bosonic", "Moebius equivariance", w_mob, cfg.tol, n),
        _le("bosonic", "angle vs classical law of cosines", w_angle, cfg.tol, n),
    ]


def suite_branch(cfg: SelftestConfig) -> list[Check]:
    rng = _rng(cfg, 8)
    fa = Algebra(max(cfg.gens, 2), "float")
    n = max(1, cfg.trials // 10)
    bad = 0
    for _ in range(n):
        p = random_ih_point(rng, fa, fermionic_scale=0.0)
        phi, psi = random_odd(rng, fa, 0.5, 4), random_odd(rng, fa, 0.5, 4)
        while (phi * psi).is_zero():
            phi, psi = random_odd(rng, fa, 0.5, 4), random_odd(rng, fa, 0.5, 4)
        # same body as p, odd coordinates switched on
        x1 = (1 + p.y * p.y - 2 * phi * psi) * p.x2.inverse()
        q = SuperVector(x1, p.x2, p.y, phi, psi)
        try:
            r = distance(p, q)
        except Exception:
            bad += 1
            continue
        bad += r.d is not None or r.cosh_d.soul.is_zero() or abs(r.cosh_d.body - 1) > 1e-12
    return [_exact("branch", "coincident bodies: cosh_d only, no d", bad == 0, n, f"{bad} bad")]


SUITES = {
    "kernel": suite_kernel,
    "osp": suite_osp,
    "action": suite_action,
    "triangles": suite_triangles,
    "intersection": suite_intersection,
    "perpendicular": suite_perpendicular,
    "bosonic": suite_bosonic,
    "branch": suite_branch,
}


@dataclass
class SelftestResult:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_selftest(cfg: SelftestConfig, suites=None) -> SelftestResult:
    out = SelftestResult()
    for name in suites or SUITES:
        out.checks.extend(SUITES[name](cfg))
    return out


__all__ = ["Check", "SelftestConfig", "SelftestResult", "SUITES", "run_selftest"]
