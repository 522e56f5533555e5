import json
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from superhyp.errors import CoincidentBodies, NotLightlike, PointOnLine, ScaleMismatch
from superhyp.geodesic import (
    Geodesic,
    act_geodesic,
    contains,
    distance,
    foot,
    from_endpoints,
    geodesic_from_json,
    geodesic_to_json,
    point_at,
    point_from_tanh,
    shift_origin,
    span_point,
    through,
    unit_tangent,
)
from superhyp.grassmann import Algebra
from superhyp.minkowski import act, classify, inner, vector, vector_to_json
from superhyp.sampling import random_time

from strategies import geodesics, ih_points, osp_elements, rng_from, seeds

F6 = Algebra(6, "float")
Q6 = Algebra(6, "rational")
E = math.e


def standard(alg):
    return Geodesic(vector(alg, 1, 1, 0), vector(alg, 1, -1, 0))


def test_from_endpoints_examples(q4):
    L = from_endpoints(vector(q4, 2, 0, 0), vector(q4, 0, 2, 0))
    assert L == standard(q4)
    L8 = from_endpoints(vector(q4, 2, 0, 0), vector(q4, 0, 8, 0), normalize=True)
    assert L8 == standard(q4)
    # unnormalized endpoints with <e,f> = 8 are the same geodesic with a shifted origin
    L8 = from_endpoints(vector(q4, 8, 0, 0), vector(q4, 0, 2, 0), normalize=True)
    assert L8.u == vector(q4, 4, Fraction(1, 4), 0)
    with pytest.raises(ScaleMismatch):
        from_endpoints(vector(q4, 2, 0, 0), vector(q4, 0, 8, 0))
    with pytest.raises(ScaleMismatch):
        from_endpoints(vector(q4, 2, 0, 0), vector(q4, 2, 0, 0))
    with pytest.raises(NotLightlike):
        from_endpoints(vector(q4, 1, 1, 0), vector(q4, 0, 2, 0))


def test_normalize_shifts_origin(f4):
    L = standard(f4)
    L8 = from_endpoints(vector(f4, 8, 0, 0), vector(f4, 0, 2, 0), normalize=True)
    assert L8.u.allclose(point_at(L, math.log(4)), 1e-14)


def test_point_at_examples(f4):
    L = standard(f4)
    assert point_at(L, 0) == L.u
    assert point_at(L, 1).allclose(vector(f4, E, 1 / E, 0), 1e-15)


def test_distance_examples(f4):
    p = vector(f4, 1, 1, 0)
    r = distance(p, p)
    assert r.cosh_d == f4.one() and r.d is None
    r = distance(p, vector(f4, E, 1 / E, 0))
    assert r.cosh_d.body == pytest.approx(math.cosh(1), rel=1e-15)
    assert r.d.body == pytest.approx(1.0, rel=1e-12)


def test_distance_branch_point(f4):
    # q has the body of p but <p,q> = 1 - e1e2: only cosh d is reported
    p = vector(f4, 1, 1, 0)
    s = 1 - f4.e(1, 2)
    q = vector(f4, s, s, 0, f4.e(1), f4.e(2))
    assert classify(q).tag == "IH"
    r = distance(p, q)
    assert r.d is None
    assert r.cosh_d.allclose(1 - f4.e(1, 2), 1e-15)


def test_through_examples(f4):
    p = vector(f4, 1, 1, 0)
    L = through(p, vector(f4, E, 1 / E, 0))
    assert L.u == p and L.v.allclose(vector(f4, 1, -1, 0), 1e-14)
    with pytest.raises(CoincidentBodies):
        through(p, p)


def test_contains_examples(f4):
    L = standard(f4)
    assert contains(L, point_at(L, 0.7))
    assert contains(L, span_point(L, 3.0, 0.25))
    ch, sh = math.cosh(1), math.sinh(1)
    assert not contains(L, vector(f4, ch, ch, sh))


def test_shift_origin_examples(f4):
    L = standard(f4)
    assert shift_origin(L, 0) == L
    L1 = shift_origin(L, 1)
    assert L1.u.allclose(vector(f4, E, 1 / E, 0), 1e-15)
    assert L1.e.allclose(L.e * E, 1e-14)
    assert L1.f.allclose(L.f * (1 / E), 1e-14)


def test_foot_example(f4):
    L = standard(f4)
    ft = foot(vector(f4, 2, 1, 1), L)
    r2 = math.sqrt(2)
    assert ft.Q.allclose(vector(f4, r2, 1 / r2, 0), 1e-15)
    assert ft.dist.cosh_d.body == pytest.approx(r2, rel=1e-15)
    assert ft.tanh_param.body == pytest.approx(1 / 3, rel=1e-15)
    ts = [k / 1000 for k in range(-3000, 3001)]
    best = min(ts, key=lambda t: inner(vector(f4, 2, 1, 1), point_at(L, t)).body)
    assert math.tanh(best) == pytest.approx(1 / 3, abs=2e-3)
    with pytest.raises(PointOnLine):
        foot(point_at(L, 2), L)


def test_foot_exact(q4):
    L = standard(q4)
    # <P,u>^2 - <P,v>^2 = x1 x2 = 1 + y^2 is a perfect square for y = 3/4
    P = vector(q4, Fraction(25, 8), Fraction(1, 2), Fraction(3, 4))
    ft = foot(P, L)
    assert ft.Q == vector(q4, Fraction(5, 2), Fraction(2, 5), 0)
    assert ft.tanh_param == q4.scalar_(Fraction(21, 29))
    assert ft.dist.cosh_d == q4.scalar_(Fraction(5, 4)) and ft.dist.d is None


@given(geodesics(F6), st.floats(-3, 3))
def test_point_at_on_ih(L, t):
    x = point_at(L, t)
    assert (inner(x, x) - 1).max_abs() <= 1e-9
    assert (inner(x, L.e) * inner(x, L.f) - 1).max_abs() <= 1e-9


@given(geodesics(F6), seeds)
def test_point_at_super_parameter(L, s):
    t = random_time(rng_from(s), F6)
    x = point_at(L, t)
    assert (inner(x, x) - 1).max_abs() <= 1e-9
    assert contains(L, x)


@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9))
def test_span_point_exact(a, b, k):
    # x y a perfect square keeps everything rational
    L = standard(Q6)
    x, y = Fraction(a * a, k), Fraction(b * b * k, 1) / (k * k)
    p = span_point(L, x, y)
    assert inner(p, p) == Q6.one()
    assert inner(p, L.e) * inner(p, L.f) == Q6.one()


@given(ih_points(F6), ih_points(F6), st.floats(0.1, 3))
def test_through_distance_coherence(p, q, s):
    assume(inner(p, q).body > 1.05)
    L = through(p, q)
    assert (distance(p, point_at(L, s)).cosh_d - math.cosh(s)).max_abs() <= 1e-8
    d = distance(p, q).d
    assert point_at(L, d).allclose(q, 1e-8)


@given(geodesics(F6), st.floats(0.2, 2.5))
def test_through_round_trip(L, t):
    M = through(L.u, point_at(L, t))
    assert M.u.allclose(L.u, 1e-12) and M.v.allclose(L.v, 1e-8)


@given(osp_elements(F6), geodesics(F6), st.floats(-2, 2))
def test_equivariance(g, L, t):
    assert act(g, point_at(L, t)).allclose(point_at(act_geodesic(g, L), t), 1e-9)


@given(geodesics(F6), ih_points(F6))
def test_foot_optimal_and_perpendicular(L, P):
    ft = foot(P, L)
    # the unit tangent at Q toward P divides by sinh of the distance
    assume(ft.dist.cosh_d.body > 1.05)
    c0 = ft.dist.cosh_d.body
    for k in range(100):
        t = -5 + k / 10
        assert inner(P, point_at(L, t)).body >= c0 - 1e-9
    assert contains(L, ft.Q)
    assert point_from_tanh(L, ft.tanh_param).allclose(ft.Q, 1e-9)
    # unit tangents at Q along L and along the perpendicular
    th = ft.tanh_param
    ch = (1 - th * th).sqrt().inverse()
    tL = L.u * (th * ch) + L.v * ch
    tP = unit_tangent(ft.Q, P)
    assert inner(tL, tP).max_abs() <= 1e-9


@given(geodesics(F6), st.floats(-2, 2))
def test_geodesic_ode(L, t):
    h = 1e-3
    xs = [point_at(L, t + k * h).body() for k in (-1, 0, 1)]
    for i in range(3):
        second = (xs[0][i] - 2 * xs[1][i] + xs[2][i]) / h ** 2
        assert abs(second - xs[1][i]) <= 1e-6 * max(1.0, abs(xs[1][i]))


@given(geodesics(F6), st.floats(-2, 2), st.floats(-2, 2))
def test_shift_origin_property(L, t, t0):
    assert point_at(shift_origin(L, t0), t).allclose(point_at(L, t + t0), 1e-9)


@given(geodesics(F6))
def test_geodesic_invariants(L):
    assert max(L.residuals().values()) <= 1e-9
    assert inner(L.e, L.f).allclose(2 * F6.one(), 1e-9)
    assert classify(L.e).tag.startswith("Lplus") and classify(L.f).tag.startswith("Lplus")


@given(geodesics(F6))
def test_json_round_trip(L):
    M = geodesic_from_json(json.loads(json.dumps(geodesic_to_json(L))), F6)
    assert M == L


def test_json_endpoint_form(q4):
    obj = {"e": vector_to_json(vector(q4, 2, 0, 0)), "f": vector_to_json(vector(q4, 0, 8, 0)), "normalize": True}
    assert geodesic_from_json(obj, q4) == standard(q4)
