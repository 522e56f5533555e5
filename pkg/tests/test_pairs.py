import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superhyp.errors import DegenerateFrame, NotIntersecting, NotParallel
from superhyp.geodesic import Geodesic, act_geodesic, from_endpoints, point_at, shift_origin
from superhyp.grassmann import Algebra
from superhyp.minkowski import act, inner, vector
from superhyp.oracles import min_distance_between
from superhyp.pairs import (
    FrameCoords,
    angle_cos_pair,
    classify_pair,
    closed_root,
    common_perpendicular,
    complete_frame,
    decompose_in_frame,
    dual_vector,
    hessian_closed_form,
    intersect,
    intersection_conditions,
    normalize_general,
    pair_coefficients,
    verdict_to_json,
)
from superhyp.sampling import (
    crossing_pair,
    intersecting_pair,
    parallel_pair,
    perturb_geodesic,
    random_geodesic,
    random_odd,
    random_osp,
    random_supernumber,
)

from strategies import rng_from, seeds

F4 = Algebra(4, "float")
Q4 = Algebra(4, "rational")
E = math.e
R3 = math.sqrt(3)


def standard(alg):
    return Geodesic(vector(alg, 1, 1, 0), vector(alg, 1, -1, 0))


def crossing_example(alg):
    return standard(alg), Geodesic(vector(alg, 1, 1, 0), vector(alg, 0, 0, 1))


def worked_pair(alg):
    return standard(alg), Geodesic(vector(alg, 1, 5, 2), vector(alg, 0, 4, 1))


# ---------------------------------------------------------------- frames


def test_frame_standard(q4):
    fr = complete_frame(vector(q4, 2, 0, 0), vector(q4, 0, 2, 0))
    assert fr.d == vector(q4, 2, 2, 2)
    assert max(fr.residuals().values()) == 0


def test_frame_shifted(f4):
    fr = complete_frame(vector(f4, 2 * E, 0, 0), vector(f4, 0, 2 / E, 0))
    assert max(fr.residuals().values()) <= 1e-14


def test_frame_shared_ray(q4):
    with pytest.raises(DegenerateFrame):
        complete_frame(vector(q4, 2, 0, 0), vector(q4, 4, 0, 0))


def test_frame_fermionic_exact(q4):
    phi, psi = q4.e(1) + q4.e(2, 3, 4), q4.e(2)
    fr = complete_frame(vector(q4, 2, 0, 0, phi, 0), vector(q4, 0, 2 - phi * psi, 0, 0, psi))
    assert max(fr.residuals().values()) == 0
    assert fr.d.y.body == 2


def test_normalize_examples(f4):
    e, f = vector(f4, 2, 0, 0), vector(f4, 0, 2, 0)
    assert normalize_general(e, f) == normalize_from_identity(f4)


def normalize_from_identity(alg):
    from superhyp.superlinalg import identity

    return identity(alg)


@given(seeds)
def test_normalize_shape(s):
    L = random_geodesic(rng_from(s), F4)
    g = normalize_general(L.e, L.f)
    e, f = act(g, L.e), act(g, L.f)
    assert e.psi.max_abs() <= 1e-10 and f.phi.max_abs() <= 1e-10
    # idempotent on shaped input
    g2 = normalize_general(e, f)
    assert act(g2, e).allclose(e, 1e-12) and act(g2, f).allclose(f, 1e-12)


def test_decompose_examples(q4):
    fr = complete_frame(vector(q4, 2, 0, 0), vector(q4, 0, 2, 0))
    half = Fraction(1, 2)
    c = decompose_in_frame((fr.e + fr.f) / 2, fr)
    assert (c.a, c.b, c.c) == (q4.zero(), q4.scalar_(half), q4.scalar_(half))
    assert c.alpha.is_zero() and c.beta.is_zero()
    c = decompose_in_frame(fr.d, fr)
    assert (c.a, c.b, c.c) == (q4.one(), q4.zero(), q4.zero())


Q6 = Algebra(6, "rational")


@given(seeds)
def test_decomposition_unique_exact(s):
    rng = rng_from(s)
    phi, psi = random_odd(rng, Q6), random_odd(rng, Q6)
    fr = complete_frame(vector(Q6, 2, 0, 0, phi, 0), vector(Q6, 0, 2 - phi * psi, 0, 0, psi))
    coords = FrameCoords(*(random_supernumber(rng, Q6, "even") for _ in range(3)),
                         random_odd(rng, Q6), random_odd(rng, Q6))
    assert decompose_in_frame(coords.reassemble(fr), fr) == coords


# ---------------------------------------------------------------- coefficients and intersection


@pytest.mark.parametrize("alg", [F4, Q4], ids=["float", "rational"])
def test_crossing_example(alg):
    L, Lp = crossing_example(alg)
    pc = pair_coefficients(L, Lp)
    assert (pc.A, pc.B, pc.C, pc.D) == (alg.one(), alg.zero(), alg.zero(), alg.zero())
    assert (pc.I, pc.J) == (alg.zero(), alg.one())
    v = intersect(L, Lp)
    assert v.tag == "intersecting"
    assert v.point == vector(alg, 1, 1, 0) and v.point_alt == v.point
    assert v.cos_angle.is_zero() and v.cos_angle_tangent.is_zero()
    assert all(v.conditions[k] == 0 for k in ("c2", "c3", "c4", "c5"))


def test_bosonic_coefficients(f4):
    L, Lp = parallel_pair(random.Random(3), f4)
    pc = pair_coefficients(L, Lp)
    assert all(x.is_zero() for x in (pc.alpha, pc.beta, pc.xi, pc.eta))
    if pc.X.body >= 0:
        assert pc.I.body == pytest.approx(math.sqrt(pc.X.body), rel=1e-9)


def test_closed_root_negative_body(f4):
    assert closed_root(f4.scalar_(-0.5), f4.e(1, 2)) is None
    assert closed_root(f4.zero(), f4.zero()).is_zero()
    assert closed_root(f4.scalar_(4), f4.e(1, 2)).allclose(2 + f4.e(1, 2) / 4, 1e-15)


def test_worked_pair_conditions_fail(f4):
    L1, L2 = worked_pair(f4)
    v = intersect(L1, L2)
    assert v.tag == "parallel"
    # X = 4 and the equalities hold; the pair fails on the inequality Y > X
    assert v.conditions["gap"] == pytest.approx(-3)
    with pytest.raises(NotIntersecting):
        angle_cos_pair(pair_coefficients(L1, L2))


@settings(max_examples=25)
@given(seeds)
def test_intersecting_family(s):
    L, Lp, P, _ = intersecting_pair(rng_from(s), F4, spread=0.6)
    v = intersect(L, Lp)
    assert v.tag == "intersecting"
    assert v.point.allclose(P, 1e-9)
    assert v.point_alt.allclose(v.point, 1e-10)
    assert (v.cos_angle - v.cos_angle_tangent).max_abs() <= 1e-9


@settings(max_examples=25)
@given(seeds)
def test_crossing_family(s):
    L, Lp, P = crossing_pair(rng_from(s), F4)
    v = intersect(L, Lp)
    assert v.tag == "intersecting"
    assert v.point.allclose(P, 1e-9)
    assert (v.cos_angle - v.cos_angle_tangent).max_abs() <= 1e-9
    assert not v.cos_angle.soul.is_zero()


def test_variant_odd_conditions_fail_at_crossings():
    rng = random.Random(11)
    bad = 0
    for _ in range(20):
        L, Lp, _ = crossing_pair(rng, F4)
        res = intersection_conditions(pair_coefficients(L, Lp))
        assert max(res["c4"], res["c5"]) <= 1e-9
        bad += max(res["c4_variant"], res["c5_variant"]) > 1e-6
    assert bad >= 10


@settings(max_examples=15)
@given(seeds)
def test_intersecting_exact(s):
    L, Lp, P, _ = intersecting_pair(rng_from(s), Q6)
    pc = pair_coefficients(L, Lp)
    res = intersection_conditions(pc)
    assert all(res[k] == 0 for k in ("c2", "c3", "c4", "c5")) and res["gap"] > 0
    # the six-fermion product vanishes on every passing configuration
    assert (pc.alpha * pc.beta * pc.xi * pc.eta * pc.phi * pc.psi).is_zero()
    k = 4 + pc.phi * pc.psi
    assert pc.I * pc.I == pc.X + 2 * pc.alpha * pc.beta * k
    assert pc.J * pc.J == pc.Y + 2 * pc.xi * pc.eta * k


@settings(max_examples=25)
@given(seeds)
def test_square_root_forms(s):
    L, Lp, _, _ = intersecting_pair(rng_from(s), F4, spread=0.6)
    pc = pair_coefficients(L, Lp)
    assert pc.J_closed is not None and (pc.J_closed - pc.J).max_abs() <= 1e-8
    if pc.I_closed is not None and pc.I.body > 0.1:
        assert (pc.I_closed - pc.I).max_abs() <= 1e-8


def test_bosonic_angle_classical():
    rng = random.Random(5)
    for _ in range(20):
        L, Lp, P, _ = intersecting_pair(rng, F4, odd_scale=0, soul_scale=0)
        v = intersect(L, Lp)
        # classical angle between the body tangent directions
        t1 = L.v * inner(P, L.u) - L.u * inner(P, L.v)
        t2 = Lp.v * inner(P, Lp.u) - Lp.u * inner(P, Lp.v)
        assert v.cos_angle.body == pytest.approx(-inner(t1, t2).body, abs=1e-12)


@settings(max_examples=20)
@given(seeds)
def test_verdict_equivariance(s):
    rng = rng_from(s)
    L, Lp, _ = crossing_pair(rng, F4)
    # moderate boosts keep coordinates O(10), where an absolute 1e-9 bound is meaningful
    g = random_osp(rng, F4, spread=0.5)
    v1 = intersect(L, Lp)
    v2 = intersect(act_geodesic(g, L), act_geodesic(g, Lp))
    assert v2.tag == v1.tag == "intersecting"
    assert v2.point.allclose(act(g, v1.point), 1e-9)
    assert (v2.cos_angle - v1.cos_angle).max_abs() <= 1e-9


# ---------------------------------------------------------------- classification


def test_same_geodesic(f4):
    L = standard(f4)
    v = classify_pair(L, shift_origin(L, 0.8))
    assert v.tag == "ultraparallel" and v.coincident


def test_shared_endpoint(f4):
    L = standard(f4)
    Lp = from_endpoints(vector(f4, 2, 0, 0), vector(f4, 1, 1, 1), normalize=True)
    v = classify_pair(L, Lp)
    assert v.tag == "ultraparallel" and not v.coincident
    with pytest.raises(NotParallel):
        common_perpendicular(L, Lp)


def test_worked_pair_perpendicular(f4):
    L1, L2 = worked_pair(f4)
    v = classify_pair(L1, L2)
    assert v.tag == "parallel"
    p = v.perpendicular
    assert p.tanh_p1.body == pytest.approx(-0.5, abs=1e-15)
    assert p.tanh_p2.body == pytest.approx(-0.5, abs=1e-15)
    assert p.cosh_dist.body == pytest.approx(2, abs=1e-14)
    assert p.discriminant.body == pytest.approx(9, abs=1e-12)
    assert p.roots_product.body == pytest.approx(1, abs=1e-14)
    assert p.foot1.allclose(vector(f4, 1 / R3, R3, 0), 1e-14)
    assert p.foot2.allclose(vector(f4, 2 / R3, 2 * R3, R3), 1e-14)
    assert v.dual_check["h1h2_sq"] == pytest.approx(4, abs=1e-12)
    h1, h2 = dual_vector(L1), dual_vector(L2)
    assert {tuple(round(x, 12) + 0.0 for x in h) for h in (h1, h2)} <= {(0.0, 0.0, 1.0), (0.0, 0.0, -1.0),
                                                                          (1.0, 3.0, 2.0), (-1.0, -3.0, -2.0)}
    assert min_distance_between((L1.u.body(), L1.v.body()), (L2.u.body(), L2.v.body())) == pytest.approx(2, abs=1e-9)


def test_worked_pair_quadratic_exact(q4):
    # the feet need sqrt(3), but the quadratic data are rational
    L1, L2 = worked_pair(q4)
    a, b, c, d = inner(L1.u, L2.u), inner(L1.v, L2.u), inner(L1.u, L2.v), inner(L1.v, L2.v)
    assert (a, b, c, d) == tuple(q4.scalar_(x) for x in (3, 2, 2, 2))
    k, m = a * b - c * d, a * a + b * b - c * c - d * d
    assert (k, m) == (q4.scalar_(2), q4.scalar_(5))
    T = q4.scalar_(Fraction(-1, 2))
    assert k * T * T + m * T + k == q4.zero()
    assert -(d * T + c) * (b * T + a).inverse() == T


@settings(max_examples=15)
@given(seeds)
def test_parallel_family(s):
    L, Lp = parallel_pair(rng_from(s), F4)
    v = classify_pair(L, Lp)
    p = v.perpendicular
    assert v.dual_check["residual"] <= 1e-9 * max(1.0, v.dual_check["cosh_sq"])
    assert p.hessian_det > 0
    a, b = inner(L.u, Lp.u).body, inner(L.v, Lp.u).body
    c, d = inner(L.u, Lp.v).body, inner(L.v, Lp.v).body
    closed = hessian_closed_form(a, b, c, d, p.tanh_p1.body, p.tanh_p2.body)
    assert p.hessian_det == pytest.approx(closed, rel=1e-8)
    assert p.roots_product is None or abs(p.roots_product.body - 1) <= 1e-9
    oracle = min_distance_between((L.u.body(), L.v.body()), (Lp.u.body(), Lp.v.body()))
    assert p.cosh_dist.body == pytest.approx(oracle, rel=1e-8)
    assert max(p.orthogonality.values()) <= 1e-9


@settings(max_examples=15)
@given(seeds)
def test_perturbed_worked_pair(s):
    rng = rng_from(s)
    L1, L2 = worked_pair(F4)
    L1, L2 = perturb_geodesic(rng, F4, L1), perturb_geodesic(rng, F4, L2)
    p = common_perpendicular(L1, L2)
    assert max(p.orthogonality.values()) <= 1e-9
    assert not p.cosh_dist.soul.is_zero()
    assert abs(p.cosh_dist.body - 2) <= 1e-12


def test_verdict_json(f4):
    v = classify_pair(*worked_pair(f4))
    obj = json.loads(json.dumps(verdict_to_json(v)))
    assert obj["tag"] == "parallel" and "perpendicular" in obj
    v = intersect(*crossing_example(f4))
    obj = json.loads(json.dumps(verdict_to_json(v)))
    assert obj["tag"] == "intersecting" and "point" in obj and "cos_angle" in obj
