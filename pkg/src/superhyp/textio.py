"""Text and JSON forms of supernumbers.

Text form: ``2.5 + 1*e[1,2] - 0.5*e[3]``.  Coefficients are decimal or
scientific floats, integers, ``p/q`` fractions, or a parenthesised Python
complex literal such as ``(1+2j)``.  Indices inside ``e[...]`` must be
strictly increasing.

Canonical JSON: ``{"terms": [{"idx": [1, 2], "c": 1.0}, ...]}`` with terms
sorted lexicographically by ``idx``.  Rational coefficients are written as
``"p/q"`` strings and complex ones as ``[re, im]`` pairs.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .grassmann import Algebra, Supernumber


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, complex):
        return f"({c.real!r}{c.imag:+}j)" if c.imag else repr(c.real)
    return repr(c)


def _is_negative(c) -> bool:
    if isinstance(c, complex):
        return False
    return c < 0


def format_supernumber(a: Supernumber) -> str:
    items = a.items()
    if not items:
        return "0"
    parts = []
    for k, (idx, c) in enumerate(items):
        neg = _is_negative(c)
        mag = -c if neg else c
        text = _format_coeff(mag)
        if idx:
            text += "*e[" + ",".join(str(i) for i in idx) + "]"
        if k == 0:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append((" - " if neg else " + ") + text)
    return "".join(parts)


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<sign>[+-])
      | (?P<complex>\([^()]*\))
      | (?P<frac>\d+/\d+)
      | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<mono>\*\s*e\s*\[(?P<idx>[^\]]*)\])
    )""",
    re.VERBOSE,
)


def _parse_coeff(kind: str, text: str, alg: Algebra, pos: int):
    try:
        if kind == "frac":
            value = Fraction(text)
        elif kind == "complex":
            value = complex(text.replace(" ", ""))
        else:
            value = int(text) if re.fullmatch(r"\d+", text) else float(text)
            if alg.exact and isinstance(value, float):
                value = Fraction(text)
        return alg.coerce(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {text!r}: {exc}", pos) from None


def parse_supernumber(text: str, alg: Algebra) -> Supernumber:
    """Parse the text form; rejects repeated or non-increasing indices."""
    pos = 0
    n = len(text)
    terms: dict[int, object] = {}
    pending_sign = None
    seen_any = False
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup if m.lastgroup != "idx" else "mono"
        start = m.start(kind)
        if kind == "sign":
            if pending_sign is not None:
                raise ParseError("doubled sign", start)
            pending_sign = m.group("sign")
            pos = m.end()
            continue
        if kind == "mono":
            raise ParseError("monomial without coefficient", start)
        if seen_any and pending_sign is None:
            raise ParseError("missing operator between terms", start)
        coef = _parse_coeff(kind, m.group(kind), alg, start)
        pos = m.end()
        mask = 0
        m2 = _TOKEN.match(text, pos)
        if m2 and m2.lastgroup in ("mono", "idx"):
            raw = m2.group("idx").strip()
            idx_start = m2.start("idx")
            if not raw:
                raise ParseError("empty index list", idx_start)
            try:
                idx = [int(s) for s in raw.split(",")]
            except ValueError:
                raise ParseError(f"bad index list {raw!r}", idx_start) from None
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ParseError("indices must be strictly increasing without repeats", idx_start)
            if idx[0] < 1 or idx[-1] > alg.gens:
                raise ParseError(f"index outside [1, {alg.gens}]", idx_start)
            for i in idx:
                mask |= 1 << (i - 1)
            pos = m2.end()
        terms[mask] = terms.get(mask, 0) + (-coef if pending_sign == "-" else coef)
        pending_sign = None
        seen_any = True
    if not seen_any or pending_sign is not None:
        raise ParseError("expression ends without a term", n)
    return Supernumber(alg, terms)


def supernumber_to_json(a: Supernumber) -> dict:
    out = []
    for idx, c in a.items():
        if isinstance(c, Fraction):
            cj = str(c)
        elif isinstance(c, complex):
            cj = [c.real, c.imag]
        else:
            cj = c
        out.append({"idx": list(idx), "c": cj})
    return {"terms": out}


def _json_coeff(c, alg: Algebra):
    if isinstance(c, list):
        if len(c) != 2:
            raise ParseError("complex coefficient must be [re, im]")
        return alg.coerce(complex(c[0], c[1]))
    if isinstance(c, str):
        try:
            return alg.coerce(Fraction(c))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient string {c!r}") from None
    if isinstance(c, bool) or not isinstance(c, (int, float)):
        raise ParseError(f"bad coefficient {c!r}")
    if alg.exact and isinstance(c, float):
        return alg.coerce(Fraction(c))
    return alg.coerce(c)


def supernumber_from_json(obj, alg: Algebra) -> Supernumber:
    """Accepts canonical JSON, a bare number, or a text-form string."""
    if isinstance(obj, str):
        return parse_supernumber(obj, alg)
    if isinstance(obj, (int, float, list)) and not isinstance(obj, bool):
        return Supernumber(alg, {0: _json_coeff(obj, alg)})
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ParseError(f"expected a supernumber, got {obj!r}")
    terms: dict[int, object] = {}
    for t in obj["terms"]:
        idx = t.get("idx", [])
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ParseError("indices must be strictly increasing without repeats")
        if idx and (idx[0] < 1 or idx[-1] > alg.gens):
            raise ParseError(f"index outside [1, {alg.gens}]")
        mask = 0
        for i in idx:
            mask |= 1 << (i - 1)
        terms[mask] = terms.get(mask, 0) + _json_coeff(t.get("c"), alg)
    return Supernumber(alg, terms)
