"""Truncated Grassmann algebra over R, C or Q.

A supernumber is a finitely supported map from monomials e_{i1} e_{i2} ... e_{ik}
(i1 < i2 < ... < ik) to scalar coefficients.  Monomials are stored as bit sets:
bit ``i - 1`` is set when generator ``e_i`` occurs.  The product of two
monomials is zero when they share a generator; otherwise its sign is the
parity of the number of transpositions needed to sort the concatenated word.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Iterable, Mapping

from .errors import (
    ContextMismatch,
    DomainError,
    ExactModeUnsupported,
    NonInvertible,
    ParityError,
)

SCALAR_KINDS = ("float", "complex", "rational")
MAX_GENS = 16

ANALYTIC_TAGS = (
    "sqrt", "exp", "ln", "cosh", "sinh", "tanh", "cos", "sin",
    "arccosh", "arcsinh", "arctanh", "arccos",
)


def swap_parity(a: int, b: int) -> int:
    """Parity (0 or 1) of the transpositions sorting the word ``a`` then ``b``.

    Each generator in ``b`` has to move left past every generator of ``a``
    with a larger index.
    """
    count = 0
    while b:
        low = b & -b
        count += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return count & 1


@lru_cache(maxsize=None)
def _sign_table(gens: int) -> tuple[tuple[int, ...], ...] | None:
    if gens > 8:
        return None
    size = 1 << gens
    return tuple(
        tuple(swap_parity(a, b) if not a & b else 0 for b in range(size))
        for a in range(size)
    )


@dataclass(frozen=True)
class Algebra:
    """Algebra context: generator count and scalar field.

    All supernumbers taking part in one computation must share a context.
    """

    gens: int = 8
    scalar: str = "float"

    def __post_init__(self):
        if not 1 <= self.gens <= MAX_GENS:
            raise ValueError(f"gens must lie in [1, {MAX_GENS}], got {self.gens}")
        if self.scalar not in SCALAR_KINDS:
            raise ValueError(f"unknown scalar kind {self.scalar!r}")

    @property
    def exact(self) -> bool:
        return self.scalar == "rational"

    def coerce(self, c):
        if self.scalar == "float":
            if isinstance(c, complex):
                raise TypeError("complex coefficient in a real algebra")
            return float(c)
        if self.scalar == "complex":
            return complex(c)
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        if isinstance(c, float) and c.is_integer():
            return Fraction(int(c))
        raise TypeError(f"cannot use {c!r} as an exact rational coefficient")

    def zero(self) -> Supernumber:
        return Supernumber(self, {})

    def one(self) -> Supernumber:
        return self.scalar_(1)

    def scalar_(self, c) -> Supernumber:
        return Supernumber(self, {0: self.coerce(c)})

    def e(self, *indices: int, coef=1) -> Supernumber:
        """The monomial ``coef * e_{i1} ... e_{ik}`` in the given order (sign applied)."""
        return Supernumber.from_terms(self, [(indices, coef)])

    def with_scalar(self, scalar: str) -> Algebra:
        return Algebra(self.gens, scalar)

    def sign_row(self, a: int):
        table = _sign_table(self.gens)
        if table is not None:
            return table[a]
        return None


def _mask_from_indices(indices: Iterable[int], gens: int) -> tuple[int, int]:
    """Bit set and sort parity of a generator word, or (-1, 0) if it squares a generator."""
    mask = 0
    parity = 0
    for i in indices:
        if not 1 <= i <= gens:
            raise ValueError(f"generator index {i} outside [1, {gens}]")
        bit = 1 << (i - 1)
        if mask & bit:
            return -1, 0
        parity ^= swap_parity(mask, bit)
        mask |= bit
    return mask, parity


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Supernumber:
    """Immutable element of the truncated Grassmann algebra."""

    __slots__ = ("alg", "_t")

    def __init__(self, alg: Algebra, terms: Mapping[int, object]):
        # terms must already be coerced; zero coefficients are dropped here
        self.alg = alg
        self._t = {m: c for m, c in terms.items() if c != 0}

    # construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, alg: Algebra, terms: Iterable[tuple[Iterable[int], object]]) -> Supernumber:
        out: dict[int, object] = {}
        for indices, c in terms:
            mask, parity = _mask_from_indices(indices, alg.gens)
            if mask < 0:
                continue
            c = alg.coerce(c)
            out[mask] = out.get(mask, 0) + (-c if parity else c)
        return cls(alg, out)

    @classmethod
    def lift(cls, alg: Algebra, x) -> Supernumber:
        if isinstance(x, Supernumber):
            if x.alg != alg:
                raise ContextMismatch(f"{x.alg} vs {alg}")
            return x
        return cls(alg, {0: alg.coerce(x)})

    # views --------------------------------------------------------------

    @property
    def terms(self) -> dict[int, object]:
        return dict(self._t)

    def items(self):
        """(index tuple, coefficient) pairs sorted lexicographically by index tuple."""
        return sorted(((mask_indices(m), c) for m, c in self._t.items()), key=lambda p: p[0])

    def coeff(self, *indices: int):
        mask, parity = _mask_from_indices(indices, self.alg.gens)
        if mask < 0:
            return self.alg.coerce(0)
        c = self._t.get(mask, self.alg.coerce(0))
        return -c if parity else c

    @property
    def body(self):
        return self._t.get(0, self.alg.coerce(0))

    @property
    def soul(self) -> Supernumber:
        return Supernumber(self.alg, {m: c for m, c in self._t.items() if m})

    def parity(self) -> str:
        """'even', 'odd' or 'mixed'; zero counts as even."""
        kinds = {m.bit_count() & 1 for m in self._t}
        if len(kinds) > 1:
            return "mixed"
        return "odd" if kinds == {1} else "even"

    def is_even(self) -> bool:
        return all(not m.bit_count() & 1 for m in self._t)

    def is_odd(self) -> bool:
        return all(m.bit_count() & 1 for m in self._t)

    def is_zero(self) -> bool:
        return not self._t

    def even_part(self) -> Supernumber:
        return Supernumber(self.alg, {m: c for m, c in self._t.items() if not m.bit_count() & 1})

    def odd_part(self) -> Supernumber:
        return Supernumber(self.alg, {m: c for m, c in self._t.items() if m.bit_count() & 1})

    def max_abs(self) -> float:
        """Largest coefficient magnitude; the residual measure used throughout."""
        return max((abs(c) for c in self._t.values()), default=0.0)

    def allclose(self, other, tol: float = 1e-9) -> bool:
        return (self - other).max_abs() <= tol

    def chop(self, eps: float) -> Supernumber:
        """Drop coefficients with magnitude below ``eps`` (explicit request only)."""
        return Supernumber(self.alg, {m: c for m, c in self._t.items() if abs(c) >= eps})

    def to_scalar(self, scalar: str) -> Supernumber:
        alg = self.alg.with_scalar(scalar)
        return Supernumber(alg, {m: alg.coerce(c) for m, c in self._t.items()})

    def conjugate(self) -> Supernumber:
        return Supernumber(self.alg, {m: c.conjugate() for m, c in self._t.items()})

    # arithmetic ---------------------------------------------------------

    def _other(self, other) -> Supernumber | None:
        if isinstance(other, Supernumber):
            if other.alg != self.alg:
                raise ContextMismatch(f"{self.alg} vs {other.alg}")
            return other
        if isinstance(other, (Number, Fraction)):
            return Supernumber(self.alg, {0: self.alg.coerce(other)})
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self._t)
        for m, c in o._t.items():
            out[m] = out.get(m, 0) + c
        return Supernumber(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Supernumber(self.alg, {m: -c for m, c in self._t.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self._t)
        for m, c in o._t.items():
            out[m] = out.get(m, 0) - c
        return Supernumber(self.alg, out)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (Number, Fraction)) and not isinstance(other, Supernumber):
            k = self.alg.coerce(other)
            return Supernumber(self.alg, {m: c * k for m, c in self._t.items()})
        o = self._other(other)
        if o is None:
            return NotImplemented
        return _multiply(self, o)

    def __rmul__(self, other):
        if isinstance(other, (Number, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Number, Fraction)) and not isinstance(other, Supernumber):
            k = self.alg.coerce(other)
            if k == 0:
                raise NonInvertible("division by zero scalar")
            if self.alg.exact:
                return Supernumber(self.alg, {m: c / k for m, c in self._t.items()})
            inv = 1 / k
            return Supernumber(self.alg, {m: c * inv for m, c in self._t.items()})
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.alg.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            o = self._other(other)
        except (ContextMismatch, TypeError):
            return False
        if o is None:
            return NotImplemented
        return self._t == o._t

    __hash__ = None

    def inverse(self) -> Supernumber:
        return invert(self)

    def sqrt(self) -> Supernumber:
        return analytic_apply("sqrt", self)

    def __repr__(self):
        from .textio import format_supernumber

        return f"Supernumber({format_supernumber(self)!r})"

    def __str__(self):
        from .textio import format_supernumber

        return format_supernumber(self)


def _multiply(a: Supernumber, b: Supernumber) -> Supernumber:
    out: dict[int, object] = {}
    if not a._t or not b._t:
        return Supernumber(a.alg, out)
    bt = b._t
    for ma, ca in a._t.items():
        row = a.alg.sign_row(ma)
        for mb, cb in bt.items():
            if ma & mb:
                continue
            m = ma | mb
            s = row[mb] if row is not None else swap_parity(ma, mb)
            v = ca * cb
            if s:
                out[m] = out.get(m, 0) - v
            else:
                out[m] = out.get(m, 0) + v
    return Supernumber(a.alg, out)


def multiply(a: Supernumber, b: Supernumber) -> Supernumber:
    return a * b


def soul_powers(s: Supernumber) -> list[Supernumber]:
    """[1, s, s^2, ...] up to (excluding) the first vanishing power."""
    powers = [s.alg.one()]
    p = s
    while not p.is_zero():
        powers.append(p)
        p = p * s
    return powers


def invert(a: Supernumber) -> Supernumber:
    """Inverse via the geometric series in the soul; requires a nonzero body."""
    b = a.body
    if b == 0:
        raise NonInvertible("supernumber with zero body is a zero divisor")
    alg = a.alg
    x = a.soul / b if alg.exact else a.soul * (1 / b)
    q = -x
    total = alg.one()
    p = alg.one()
    while True:
        p = p * q
        if p.is_zero():
            break
        total = total + p
    return total / b


def body_compare(a, b) -> int:
    """-1, 0 or 1 comparing bodies only (souls ignored)."""
    ab = a.body if isinstance(a, Supernumber) else a
    bb = b.body if isinstance(b, Supernumber) else b
    if isinstance(ab, complex) or isinstance(bb, complex):
        raise TypeError("complex bodies are not ordered")
    return (ab > bb) - (ab < bb)


def require_parity(x: Supernumber, parity: str, name: str = "value") -> None:
    ok = x.is_even() if parity == "even" else x.is_odd()
    if not ok:
        raise ParityError(f"{name} must be {parity}, got {x.parity()}")


# analytic lifts ---------------------------------------------------------


def _ps_mul(p, q, n):
    return [sum(p[j] * q[k - j] for j in range(k + 1)) for k in range(n)]


def _ps_recip(p, n):
    r = [1 / p[0]]
    for k in range(1, n):
        r.append(-sum(p[j] * r[k - j] for j in range(1, k + 1)) / p[0])
    return r


def _ps_sqrt(p, n, root0):
    s = [root0]
    for k in range(1, n):
        acc = p[k] - sum(s[j] * s[k - j] for j in range(1, k))
        s.append(acc / (2 * root0))
    return s


def _ps_integrate(p, c0, n):
    return [c0] + [p[k - 1] / k for k in range(1, n)]


def _pad(p, n):
    return list(p) + [0] * (n - len(p))


def _exact_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise DomainError("sqrt of negative body")
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ExactModeUnsupported(f"sqrt({x}) is irrational; use float scalars")
    return Fraction(rn, rd)


def taylor_coefficients(tag: str, x0, n: int, scalar: str = "float") -> list:
    """f^(k)(x0)/k! for k < n, via truncated power-series arithmetic."""
    if tag not in ANALYTIC_TAGS:
        raise ValueError(f"unknown analytic function {tag!r}")
    if scalar == "rational":
        if tag != "sqrt":
            raise ExactModeUnsupported(f"{tag} is transcendental; use float scalars")
        x0 = Fraction(x0)
        return _ps_sqrt(_pad([x0, Fraction(1)], n), n, _exact_sqrt(x0))

    m = cmath if scalar == "complex" else math
    fact = [math.factorial(k) for k in range(n)]
    ident = _pad([x0, 1.0], n)
    if tag == "sqrt":
        return _ps_sqrt(ident, n, m.sqrt(x0))
    if tag == "exp":
        e = m.exp(x0)
        return [e / fact[k] for k in range(n)]
    if tag == "ln":
        return [m.log(x0)] + [(-1) ** (k + 1) / (k * x0**k) for k in range(1, n)]
    if tag in ("cosh", "sinh"):
        ch, sh = m.cosh(x0), m.sinh(x0)
        first, second = (ch, sh) if tag == "cosh" else (sh, ch)
        return [(first if k % 2 == 0 else second) / fact[k] for k in range(n)]
    if tag in ("cos", "sin"):
        c, s = m.cos(x0), m.sin(x0)
        cycle = [c, -s, -c, s] if tag == "cos" else [s, c, -s, -c]
        return [cycle[k % 4] / fact[k] for k in range(n)]
    if tag == "tanh":
        ch = taylor_coefficients("cosh", x0, n, scalar)
        sh = taylor_coefficients("sinh", x0, n, scalar)
        return _ps_mul(sh, _ps_recip(ch, n), n)
    if tag == "arccosh":
        q = _pad([x0 * x0 - 1, 2 * x0, 1.0], n)
        d = _ps_recip(_ps_sqrt(q, n, m.sqrt(q[0])), n)
        return _ps_integrate(d, m.acosh(x0), n)
    if tag == "arcsinh":
        q = _pad([x0 * x0 + 1, 2 * x0, 1.0], n)
        d = _ps_recip(_ps_sqrt(q, n, m.sqrt(q[0])), n)
        return _ps_integrate(d, m.asinh(x0), n)
    if tag == "arctanh":
        q = _pad([1 - x0 * x0, -2 * x0, -1.0], n)
        return _ps_integrate(_ps_recip(q, n), m.atanh(x0), n)
    # arccos
    q = _pad([1 - x0 * x0, -2 * x0, -1.0], n)
    d = _ps_recip(_ps_sqrt(q, n, m.sqrt(q[0])), n)
    return _ps_integrate([-c for c in d], m.acos(x0), n)


_BODY_VALUE = {
    "sqrt": math.sqrt, "exp": math.exp, "ln": math.log, "cosh": math.cosh,
    "sinh": math.sinh, "tanh": math.tanh, "cos": math.cos, "sin": math.sin,
    "arccosh": math.acosh, "arcsinh": math.asinh, "arctanh": math.atanh,
    "arccos": math.acos,
}


def _check_domain(tag: str, x0, has_soul: bool) -> None:
    """Raise DomainError unless f is smooth at the (real) body."""
    if tag in ("sqrt", "ln"):
        ok = x0 > 0 or (tag == "sqrt" and x0 == 0 and not has_soul)
    elif tag == "arccosh":
        ok = x0 > 1 or (x0 == 1 and not has_soul)
    elif tag == "arctanh":
        ok = -1 < x0 < 1
    elif tag == "arccos":
        ok = -1 < x0 < 1 or (abs(x0) == 1 and not has_soul)
    else:
        ok = True
    if not ok:
        raise DomainError(f"{tag} is not smooth at body {x0}" + (" with nonzero soul" if has_soul else ""))


def analytic_apply(tag: str, a: Supernumber) -> Supernumber:
    """f(a) = sum_k f^(k)(body)/k! * soul^k."""
    if tag not in ANALYTIC_TAGS:
        raise ValueError(f"unknown analytic function {tag!r}")
    alg = a.alg
    if alg.exact and tag != "sqrt":
        raise ExactModeUnsupported(f"{tag} is transcendental; use float scalars")
    x0 = a.body
    s = a.soul
    if alg.scalar != "complex":
        _check_domain(tag, x0, not s.is_zero())
    elif tag in ("sqrt", "ln") and x0 == 0:
        raise DomainError(f"{tag} is not analytic at body 0")
    if s.is_zero() and alg.scalar == "float":
        return alg.scalar_(_BODY_VALUE[tag](x0))
    powers = soul_powers(s)
    coeffs = taylor_coefficients(tag, x0, len(powers), alg.scalar)
    total = alg.zero()
    for c, p in zip(coeffs, powers):
        total = total + p * c
    return total


def sqrt(a: Supernumber) -> Supernumber:
    return analytic_apply("sqrt", a)


def exp(a: Supernumber) -> Supernumber:
    return analytic_apply("exp", a)


def cosh(a: Supernumber) -> Supernumber:
    return analytic_apply("cosh", a)


def sinh(a: Supernumber) -> Supernumber:
    return analytic_apply("sinh", a)


def arccosh(a: Supernumber) -> Supernumber:
    return analytic_apply("arccosh", a)
