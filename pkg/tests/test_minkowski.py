import cmath
import json
import random

import pytest
from hypothesis import assume, given

from superhyp.errors import ExactModeUnsupported, NonInvertible, NotOnIH, ParityError, ShapeError
from superhyp.grassmann import Algebra
from superhyp.minkowski import (
    SuperVector,
    act,
    classify,
    discriminant_of,
    from_form_matrix,
    inner,
    super_discriminant,
    to_form_matrix,
    to_upper_half_plane,
    vector,
    vector_from_json,
    vector_to_json,
)
from superhyp.oracles import classical_uhp, mobius
from superhyp.sampling import random_null_vector, random_odd, random_sl2
from superhyp.superlinalg import embed_sl2, from_rows, identity, smul, u_gen

from strategies import ih_points, osp_elements, rng_from, seeds

Q6 = Algebra(6, "rational")
F6 = Algebra(6, "float")


def test_inner_examples(q4):
    assert inner(vector(q4, 1, 1, 0), vector(q4, 1, 1, 0)) == q4.one()
    assert inner(vector(q4, 2, 0, 0), vector(q4, 0, 2, 0)) == q4.scalar_(2)
    p = vector(q4, 0, 0, 0, q4.e(1), 0)
    r = vector(q4, 0, 0, 0, 0, q4.e(2))
    assert inner(p, r) == q4.e(1, 2)


def test_classify_examples(q4):
    assert classify(vector(q4, 1, 1, 1)).tag == "LplusSpecial"
    c = classify(vector(q4, 1, 1, 1, q4.e(1), 0))
    assert c.tag == "Lplus" and c.special_residual == 1
    assert classify(vector(q4, 1, -1, 0)).tag == "H"
    assert classify(vector(q4, 1, 1, 0)).tag == "IH"
    assert classify(vector(q4, -1, -1, 0)).tag == "none"
    assert classify(vector(q4, -1, -1, 1)).tag == "Lother"


def test_vector_parity_checked(q4):
    with pytest.raises(ParityError):
        vector(q4, q4.e(1), 1, 0)


def test_form_matrix_examples(q4):
    m = to_form_matrix(vector(q4, 1, 1, 0))
    assert m == from_rows(q4, ((1, 0, 0), (0, 1, 0), (0, 0, 0)))
    bad = from_rows(q4, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(ShapeError):
        from_form_matrix(bad)


def test_act_examples(q6):
    p = vector(q6, 1, 1, 0)
    assert act(identity(q6), p) == p
    assert act(embed_sl2(1, 1, 0, 1, alg=q6), p) == vector(q6, 1, 2, 1)
    g = smul(embed_sl2(2, 1, 1, 1, alg=q6), u_gen(q6.e(1), q6.e(2)))
    r = vector(q6, 2, Q_HALF(q6), 0, q6.e(3), q6.e(4))
    assert inner(act(g, p), act(g, r)) == inner(p, r)


def Q_HALF(alg):
    return alg.scalar_(1) / 2


@pytest.fixture
def q6():
    return Algebra(6, "rational")


def test_discriminant_examples(q4):
    one, zero = q4.one(), q4.zero()
    assert super_discriminant(one, zero, one, zero, zero) == q4.scalar_(-4)
    assert super_discriminant(one, zero, -one, zero, zero) == q4.scalar_(4)
    assert super_discriminant(one, zero, one, q4.e(1), q4.e(2)) == -4 + 8 * q4.e(1, 2)
    with pytest.raises(ParityError):
        super_discriminant(one, zero, one, q4.e(1, 2), zero)


def test_uhp_examples(f4):
    z, th = to_upper_half_plane(vector(f4, 1, 1, 0))
    assert z.body == pytest.approx(1j) and th.is_zero()
    z, th = to_upper_half_plane(vector(f4, 1, 2, 1))
    assert z.body == pytest.approx((1j - 1) / 2) and th.is_zero()


def test_uhp_errors(q4, f4):
    with pytest.raises(ExactModeUnsupported):
        to_upper_half_plane(vector(q4, 1, 1, 0))
    with pytest.raises(NotOnIH):
        to_upper_half_plane(vector(f4, 2, 1, 0))


def test_uhp_superabsolute_edge(f4):
    # x2 body = 0 cannot happen on IH with y real (x1 x2 - y^2 = 1), so any such input is rejected
    with pytest.raises((NonInvertible, NotOnIH)):
        to_upper_half_plane(vector(f4, 1, 0, 0))


@given(ih_points(Q6), ih_points(Q6))
def test_inner_symmetric(p, r):
    assert inner(p, r) == inner(r, p)


@given(osp_elements(Q6), ih_points(Q6), ih_points(Q6))
def test_isometry_exact(g, p, r):
    assert inner(act(g, p), act(g, r)) == inner(p, r)


@given(osp_elements(F6), ih_points(F6), ih_points(F6))
def test_isometry_float(g, p, r):
    assert (inner(act(g, p), act(g, r)) - inner(p, r)).max_abs() <= 1e-9


@given(osp_elements(Q6), osp_elements(Q6), ih_points(Q6))
def test_right_action(g, h, p):
    # act(g, .) is A -> g^st A g, so the product acts first by g and then by h
    assert act(smul(g, h), p) == act(h, act(g, p))


@given(osp_elements(Q6), ih_points(Q6))
def test_act_preserves_ih(g, p):
    assert classify(act(g, p)).tag == "IH"


@given(osp_elements(Q6), seeds)
def test_act_preserves_isotropy(g, s):
    n = random_null_vector(rng_from(s), Q6)
    assert inner(act(g, n), act(g, n)).is_zero()
    assert classify(act(g, n)).tag in ("Lplus", "LplusSpecial")


@given(osp_elements(Q6), ih_points(Q6))
def test_discriminant_invariant(g, p):
    assert discriminant_of(act(g, p)) == discriminant_of(p)
    assert discriminant_of(p) == -4 * inner(p, p)


@given(seeds)
def test_special_cone_equivalence(s):
    n = random_null_vector(rng_from(s), Q6)
    # the equivalence divides by y, so it needs an invertible y (both x1, x2 off the axes)
    assume(n.y.body != 0)
    a = (n.x1 * n.psi - n.y * n.phi).is_zero()
    b = (n.x2 * n.phi - n.y * n.psi).is_zero()
    assert a == b


@given(seeds)
def test_special_cone_equivalence_special(s):
    rng = rng_from(s)
    base = random_null_vector(rng, Q6, fermionic_scale=0.3)
    assume(base.y.body != 0)
    psi = random_odd(rng, Q6)
    phi = base.y * psi * base.x2.inverse()
    x1 = (base.y * base.y - 2 * phi * psi) * base.x2.inverse()
    n = SuperVector(x1, base.x2, base.y, phi, psi)
    assert inner(n, n).is_zero()
    assert (n.x1 * n.psi - n.y * n.phi).is_zero()
    assert (n.x2 * n.phi - n.y * n.psi).is_zero()


@given(ih_points(Q6))
def test_form_matrix_round_trip(p):
    assert from_form_matrix(to_form_matrix(p)) == p


@given(seeds, ih_points(F6, fermionic_scale=0.0))
def test_uhp_equivariance_bosonic(s, p):
    g = random_sl2(rng_from(s), F6, soul_scale=0.0)
    a, b, c, d = (x.body for x in g.bosonic_block())
    z_moved, _ = to_upper_half_plane(act(g, p))
    z, _ = to_upper_half_plane(p)
    assert cmath.isclose(z.body, classical_uhp(p.body()), abs_tol=1e-12)
    assert cmath.isclose(z_moved.body, mobius((a, b, c, d), z.body), rel_tol=1e-9, abs_tol=1e-9)
    assert z.body.imag > 0


@given(ih_points(F6))
def test_uhp_body_in_upper_half_plane(p):
    z, th = to_upper_half_plane(p)
    assert z.body.imag > 0 and th.is_odd() or th.is_zero()


@given(ih_points(Q6))
def test_vector_json_round_trip(p):
    assert vector_from_json(json.loads(json.dumps(vector_to_json(p))), Q6) == p
