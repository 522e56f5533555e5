"""Independent reference computations used by the tests and the self-test.

None of these share code with the kernel they check: products are done on
explicit generator words, and the classical geometry works on plain floats.
"""

from __future__ import annotations

import math

from .grassmann import Supernumber


def _word_product(w1: tuple[int, ...], w2: tuple[int, ...]):
    """(sign, sorted word) of the concatenation, or None when a generator repeats."""
    word = list(w1 + w2)
    if len(set(word)) < len(word):
        return None
    sign = 1
    # bubble sort, one sign flip per adjacent transposition
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return sign, tuple(word)


def word_multiply(a: Supernumber, b: Supernumber) -> Supernumber:
    """Grassmann product by concatenating generator words and counting swaps."""
    out: dict[tuple[int, ...], object] = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            r = _word_product(wa, wb)
            if r is None:
                continue
            sign, w = r
            out[w] = out.get(w, 0) + sign * ca * cb
    return Supernumber.from_terms(a.alg, list(out.items()))


# ---------------------------------------------------------------- classical geometry


def mink(p, q) -> float:
    """Bilinear form 1/2(x1 x2' + x1' x2) - y y' on body triples."""
    return 0.5 * (p[0] * q[1] + q[0] * p[1]) - p[2] * q[2]


def hyperboloid_point(x: float, y: float):
    """Body triple (x1, x2, y) of the point with Z^2 - X^2 - Y^2 = 1 over (X, Y)."""
    z = math.sqrt(1 + x * x + y * y)
    return (z + x, z - x, y)


def classical_distance(p, q) -> float:
    return math.acosh(max(1.0, mink(p, q)))


def classical_angle_cos(a, b, c) -> float:
    """Angle at a of the triangle abc via the classical law of cosines on side lengths."""
    ab, ac, bc = classical_distance(a, b), classical_distance(a, c), classical_distance(b, c)
    return (math.cosh(ab) * math.cosh(ac) - math.cosh(bc)) / (math.sinh(ab) * math.sinh(ac))


def classical_uhp(p) -> complex:
    """Upper half-plane image of a body point: (i - y)/x2."""
    return (1j - p[2]) / p[1]


def mobius(g, z: complex) -> complex:
    """Image of z under the transformation matching act(embed_sl2(a, b, c, d), .)."""
    a, b, c, d = g
    return (a * z - c) / (-b * z + d)


def classical_act(g, p):
    """g^T A g on the 2x2 symmetric matrix A = [[x1, y], [y, x2]]."""
    a, b, c, d = g
    x1, x2, y = p
    # columns of g are (a, c) and (b, d)
    n11 = a * (a * x1 + c * y) + c * (a * y + c * x2)
    n12 = a * (b * x1 + d * y) + c * (b * y + d * x2)
    n22 = b * (b * x1 + d * y) + d * (b * y + d * x2)
    return (n11, n22, n12)


def min_distance_between(L1, L2, grid: int = 400, span: float = 6.0) -> float:
    """Brute-force min over (p1, p2) of cosh-distance between body points of two geodesics.

    L1, L2 are ((u body), (v body)) pairs.  Coarse grid, then a few rounds of
    local refinement.
    """
    def pt(L, t):
        u, v = L
        return tuple(a * math.cosh(t) + b * math.sinh(t) for a, b in zip(u, v))

    def f(s, t):
        return mink(pt(L1, s), pt(L2, t))

    best = min((f(s, t), s, t) for s in _lin(-span, span, grid // 10) for t in _lin(-span, span, grid // 10))
    _, s0, t0 = best
    h = 2 * span / (grid // 10)
    for _ in range(60):
        cand = min((f(s0 + i * h, t0 + j * h), s0 + i * h, t0 + j * h) for i in (-1, 0, 1) for j in (-1, 0, 1))
        if cand[1] == s0 and cand[2] == t0:
            h /= 2
        _, s0, t0 = cand
    return f(s0, t0)


def _lin(a: float, b: float, n: int):
    return [a + (b - a) * k / (n - 1) for k in range(n)]
