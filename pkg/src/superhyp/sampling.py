"""Random supernumbers, OSp(1|2) elements and points for tests and experiments.

Every sampler takes an explicit ``random.Random`` so runs are reproducible
from a seed; nothing here touches global state.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .grassmann import Algebra, Supernumber, analytic_apply
from .minkowski import SuperVector
from .superlinalg import SuperMatrix, embed_sl2, smul, u_gen


def _coef(rng: random.Random, alg: Algebra, scale: float):
    if alg.exact:
        return Fraction(rng.randint(-4, 4), rng.randint(1, 4)) * Fraction(scale).limit_denominator(16)
    return rng.uniform(-scale, scale)


def random_supernumber(rng: random.Random, alg: Algebra, parity: str = "any",
                       max_terms: int = 16, scale: float = 1.0) -> Supernumber:
    """Random sparse supernumber; ``parity`` is 'even', 'odd' or 'any'."""
    masks = range(1 << alg.gens)
    if parity == "even":
        masks = [m for m in masks if bin(m).count("1") % 2 == 0]
    elif parity == "odd":
        masks = [m for m in masks if bin(m).count("1") % 2 == 1]
    else:
        masks = list(masks)
    k = rng.randint(1, min(max_terms, len(masks)))
    return Supernumber(alg, {m: _coef(rng, alg, scale) for m in rng.sample(masks, k)})


def random_odd(rng: random.Random, alg: Algebra, scale: float = 1.0, max_terms: int = 6) -> Supernumber:
    if scale == 0:
        return alg.zero()
    return random_supernumber(rng, alg, "odd", max_terms, scale)


def random_soul(rng: random.Random, alg: Algebra, scale: float = 1.0, max_terms: int = 6) -> Supernumber:
    """Even element with zero body."""
    if scale == 0 or alg.gens < 2:
        return alg.zero()
    s = random_supernumber(rng, alg, "even", max_terms, scale)
    return s.soul


def _random_sl2_body(rng: random.Random, exact: bool, spread: float = 1.0):
    """Classical SL(2) matrix, a product of a rotation-like and a boost-like factor."""
    if exact:
        # rational points on the unit circle and rational hyperbolas
        t = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
        r = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        k = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        rot = (c, -s, s, c)
        diag = (r, 0, 0, 1 / r)
        shear = (1, k, 0, 1)
    else:
        th = rng.uniform(-math.pi, math.pi)
        rot = (math.cos(th), -math.sin(th), math.sin(th), math.cos(th))
        r = math.exp(rng.uniform(-spread, spread))
        diag = (r, 0.0, 0.0, 1 / r)
        shear = (1.0, rng.uniform(-spread, spread), 0.0, 1.0)
    out = (1, 0, 0, 1)
    for m in (rot, diag, shear):
        a, b, c_, d = out
        p, q, r_, s_ = m
        out = (a * p + b * r_, a * q + b * s_, c_ * p + d * r_, c_ * q + d * s_)
    return out


def random_sl2(rng: random.Random, alg: Algebra, soul_scale: float = 0.5,
               spread: float = 1.0) -> SuperMatrix:
    """embed_sl2 of a classical matrix with nilpotent even perturbations, renormalized to det 1.

    The entry re-solved from ad - bc = 1 is the one whose partner has the
    largest body (at least 1/sqrt 2), so the division never amplifies the souls.
    """
    a, b, c, d = (Supernumber.lift(alg, x) + random_soul(rng, alg, soul_scale, 3)
                  for x in _random_sl2_body(rng, alg.exact, spread))
    partner = max(range(4), key=lambda k: abs((d, c, b, a)[k].body))
    if partner == 0:
        a = (1 + b * c) * d.inverse()
    elif partner == 3:
        d = (1 + b * c) * a.inverse()
    elif partner == 1:
        b = (a * d - 1) * c.inverse()
    else:
        c = (a * d - 1) * b.inverse()
    return embed_sl2(a, b, c, d, alg=alg)


def random_osp(rng: random.Random, alg: Algebra, length: int = 3, odd_scale: float = 0.5,
               soul_scale: float = 0.5, spread: float = 1.0) -> SuperMatrix:
    """Product chain of SL(2) embeddings and fermionic u(alpha, beta) factors.

    ``spread`` bounds the log of the boost and the shear of each classical factor.
    """
    g = random_sl2(rng, alg, soul_scale, spread)
    for _ in range(length - 1):
        u = u_gen(random_odd(rng, alg, odd_scale, 4), random_odd(rng, alg, odd_scale, 4))
        g = smul(smul(g, u), random_sl2(rng, alg, soul_scale, spread))
    return g


def random_ih_point(rng: random.Random, alg: Algebra, spread: float = 1.0,
                    fermionic_scale: float = 0.5) -> SuperVector:
    """Point on IH: random body via a boost, odd parts random, x1 solved from <p,p> = 1."""
    if alg.exact:
        x2 = Supernumber.lift(alg, Fraction(rng.randint(1, 6), rng.randint(1, 6)))
        y = Supernumber.lift(alg, Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
    else:
        x2 = Supernumber.lift(alg, math.exp(rng.uniform(-spread, spread)))
        y = Supernumber.lift(alg, rng.uniform(-spread, spread))
    y = y + random_soul(rng, alg, fermionic_scale, 3)
    x2 = x2 + random_soul(rng, alg, fermionic_scale, 3)
    phi = random_odd(rng, alg, fermionic_scale, 4)
    psi = random_odd(rng, alg, fermionic_scale, 4)
    # x1 x2 - y^2 + 2 phi psi = 1
    x1 = (1 + y * y - 2 * phi * psi) * x2.inverse()
    return SuperVector(x1, x2, y, phi, psi)


def random_null_vector(rng: random.Random, alg: Algebra, fermionic_scale: float = 0.5,
                       angle: float | None = None, scale=None) -> SuperVector:
    """Vector of the positive light cone with direction angle ``angle`` on bodies.

    In exact mode the body is (s^2, t^2, s t) for small random rationals and
    ``angle``/``scale`` are ignored.
    """
    if alg.exact:
        s = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        t = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        x2 = Supernumber.lift(alg, t * t) + random_soul(rng, alg, fermionic_scale, 3)
        y = Supernumber.lift(alg, s * t) + random_soul(rng, alg, fermionic_scale, 3)
        phi = random_odd(rng, alg, fermionic_scale, 4)
        psi = random_odd(rng, alg, fermionic_scale, 4)
        return SuperVector((y * y - 2 * phi * psi) * x2.inverse(), x2, y, phi, psi)
    if angle is None:
        angle = rng.uniform(-math.pi, math.pi)
    if scale is None:
        scale = math.exp(rng.uniform(-0.5, 0.5))
    # body: Z = 1, X = cos, Y = sin  with x1 = Z + X, x2 = Z - X
    x2b = scale * (1 - math.cos(angle))
    yb = scale * math.sin(angle)
    if x2b < 1e-3:
        # near the x2 = 0 ray; solve for x2 from x1 instead
        x1 = Supernumber.lift(alg, scale * (1 + math.cos(angle)))
        y = Supernumber.lift(alg, yb) + random_soul(rng, alg, fermionic_scale, 3)
        phi = random_odd(rng, alg, fermionic_scale, 4)
        psi = random_odd(rng, alg, fermionic_scale, 4)
        x2 = (y * y - 2 * phi * psi) * x1.inverse()
        return SuperVector(x1, x2, y, phi, psi)
    x2 = Supernumber.lift(alg, x2b) + random_soul(rng, alg, fermionic_scale, 3)
    y = Supernumber.lift(alg, yb) + random_soul(rng, alg, fermionic_scale, 3)
    phi = random_odd(rng, alg, fermionic_scale, 4)
    psi = random_odd(rng, alg, fermionic_scale, 4)
    x1 = (y * y - 2 * phi * psi) * x2.inverse()
    return SuperVector(x1, x2, y, phi, psi)


def random_geodesic(rng: random.Random, alg: Algebra, fermionic_scale: float = 0.5,
                    angles: tuple[float, float] | None = None):
    """Geodesic between two random light-cone rays (bodies at distinct angles)."""
    from .geodesic import from_endpoints

    if angles is None:
        a1 = rng.uniform(-math.pi, math.pi)
        a2 = a1 + rng.uniform(0.3, 2 * math.pi - 0.3)
    else:
        a1, a2 = angles
    e = random_null_vector(rng, alg, fermionic_scale, a1)
    f = random_null_vector(rng, alg, fermionic_scale, a2)
    return from_endpoints(e, f, normalize=True)


def random_time(rng: random.Random, alg: Algebra, spread: float = 1.5, soul_scale: float = 0.3) -> Supernumber:
    return Supernumber.lift(alg, rng.uniform(-spread, spread)) + random_soul(rng, alg, soul_scale, 3)


def sqrt_even(x: Supernumber) -> Supernumber:
    return analytic_apply("sqrt", x)


def _rational_hyperbolic(rng: random.Random):
    """(cosh s, sinh s) pair with rational entries: ((t + 1/t)/2, (t - 1/t)/2)."""
    t = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    return (t + 1 / t) / 2, (t - 1 / t) / 2


def _rational_circle(rng: random.Random):
    t = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    return (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)


def intersecting_pair(rng: random.Random, alg: Algebra, odd_scale: float = 0.5, soul_scale: float = 0.3,
                      spread: float = 1.0, length: int = 3):
    """(L, Lp, P, g): two geodesics through P = act(g, base point), moved by a random OSp g.

    Before the move L runs along y = 0 and Lp leaves the base point at a
    random angle; both origins are shifted.  Works in rational mode too.
    """
    from .geodesic import Geodesic

    def vec(x1, x2, y):
        return SuperVector(*(Supernumber.lift(alg, c) for c in (x1, x2, y, 0, 0)))

    if alg.exact:
        c, s = _rational_circle(rng)
        while abs(s) < Fraction(1, 20):
            c, s = _rational_circle(rng)
        ch1, sh1 = _rational_hyperbolic(rng)
        ch2, sh2 = _rational_hyperbolic(rng)
    else:
        th = rng.uniform(0.3, math.pi - 0.3) * rng.choice((1, -1))
        c, s = math.cos(th), math.sin(th)
        t1, t2 = rng.uniform(-spread, spread), rng.uniform(-spread, spread)
        ch1, sh1, ch2, sh2 = math.cosh(t1), math.sinh(t1), math.cosh(t2), math.sinh(t2)
    base, tan0, tan1 = vec(1, 1, 0), vec(1, -1, 0), vec(c, -c, s)
    # point at parameter -t on each line is the base point once the origin moves by t
    L0 = Geodesic(base * ch1 + tan0 * sh1, base * sh1 + tan0 * ch1)
    Lp0 = Geodesic(base * ch2 + tan1 * sh2, base * sh2 + tan1 * ch2)
    g = random_osp(rng, alg, length, odd_scale, soul_scale, spread)
    from .geodesic import act_geodesic
    from .minkowski import act

    return act_geodesic(g, L0), act_geodesic(g, Lp0), act(g, base), g


def crossing_pair(rng: random.Random, alg: Algebra, fermionic_scale: float = 0.3, spread: float = 0.8):
    """(L, Lp, P): geodesics from a random point P toward two other random points.

    Unlike ``intersecting_pair`` the three points carry independent odd parts,
    so the pair is not an OSp image of a bosonic configuration.  Float only.
    """
    from .geodesic import through

    P = random_ih_point(rng, alg, spread, fermionic_scale)
    while True:
        Q1 = random_ih_point(rng, alg, spread, fermionic_scale)
        Q2 = random_ih_point(rng, alg, spread, fermionic_scale)
        L, Lp = through(P, Q1), through(P, Q2)
        # keep the body angle away from 0 and pi
        from .minkowski import inner

        c = inner(L.v, Lp.v).body
        if abs(c) < 0.95:
            return L, Lp, P


def perturb_geodesic(rng: random.Random, alg: Algebra, L, scale: float = 0.3):
    """Add random odd parts to u and v, then re-project onto IH x H with <u,v> = 0."""
    from .geodesic import Geodesic
    from .minkowski import inner

    def odd_part():
        return SuperVector(alg.zero(), alg.zero(), alg.zero(),
                           random_odd(rng, alg, scale, 4), random_odd(rng, alg, scale, 4))

    u = L.u + odd_part()
    u = u * analytic_apply("sqrt", inner(u, u)).inverse()
    v = L.v + odd_part()
    v = v - u * inner(u, v)
    v = v * analytic_apply("sqrt", -inner(v, v)).inverse()
    return Geodesic(u, v)


def parallel_pair(rng: random.Random, alg: Algebra, fermionic_scale: float = 0.0, max_tries: int = 200):
    """Two random geodesics that neither meet nor share an asymptotic ray (on bodies)."""
    from .errors import SamplerExhausted
    from .pairs import classify_pair

    for _ in range(max_tries):
        # four distinct light-cone directions, the pairs not interleaved on the circle
        base = rng.uniform(-math.pi, math.pi)
        cuts = sorted(rng.uniform(0.25, 2 * math.pi - 0.25) for _ in range(3))
        if min(b - a for a, b in zip([0.0] + cuts, cuts + [2 * math.pi])) < 0.2:
            continue
        a1, a2, a3, a4 = (base + c for c in [0.0] + cuts)
        L = random_geodesic(rng, alg, fermionic_scale, (a1, a2))
        Lp = random_geodesic(rng, alg, fermionic_scale, (a3, a4))
        try:
            if classify_pair(L, Lp).tag == "parallel":
                return L, Lp
        except Exception:
            continue
    raise SamplerExhausted("no parallel pair found")
