"""Sparse multivariate polynomials with exact coefficients.

Coefficients are either `fractions.Fraction` values or elements of a
small polynomial ring `CRing` in named parameters (used for generic
marked sets).  Heads of marked polynomials are monic, so the engine
never divides coefficients; any exact commutative ring with 1 whose
elements support +, -, * and truth testing works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .terms import Term, deglex_key, format_term, parse_term


class CRing:
    """Polynomial ring Q[C_1, ..., C_k] over named parameters."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)

    def zero(self) -> "CPoly":
        return CPoly(self, {})

    def one(self) -> "CPoly":
        return CPoly(self, {(0,) * len(self.names): Fraction(1)})

    def variable(self, i: int) -> "CPoly":
        e = [0] * len(self.names)
        e[i] = 1
        return CPoly(self, {tuple(e): Fraction(1)})

    def constant(self, c) -> "CPoly":
        c = Fraction(c)
        return CPoly(self, {(0,) * len(self.names): c} if c else {})

    def __eq__(self, other) -> bool:
        return isinstance(other, CRing) and self.names == other.names

    def __repr__(self) -> str:
        return f"CRing{self.names}"


class CPoly:
    """Element of a CRing; exponent tuples map to nonzero Fractions."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: CRing, coeffs: Mapping[tuple, Fraction]):
        self.ring = ring
        self.c = {e: v for e, v in coeffs.items() if v}

    def _coerce(self, other) -> "CPoly | None":
        if isinstance(other, CPoly):
            return other if other.ring == self.ring else None
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.c)
        for e, v in o.c.items():
            w = out.get(e, Fraction(0)) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return CPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CPoly(self.ring, {e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = out.get(e, Fraction(0)) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return CPoly(self.ring, out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return isinstance(other, CPoly) and self.ring == other.ring and self.c == other.c

    def __hash__(self):
        return hash((self.ring.names, tuple(sorted(self.c.items()))))

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for e, v in self.c.items():
            term = v
            for k, val in zip(e, values):
                if k:
                    term *= Fraction(val) ** k
            total += term
        return total

    def monic(self) -> "CPoly":
        """Scale so the leading monomial (by degree, then exponents) is 1."""
        if not self.c:
            return self
        lead = max(self.c, key=lambda e: (sum(e), e))
        lc = self.c[lead]
        return CPoly(self.ring, {e: v / lc for e, v in self.c.items()})

    def render(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, key=lambda e: (sum(e), e), reverse=True):
            v = self.c[e]
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(v))
            elif v == 1:
                parts.append("*".join(factors))
            elif v == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{v}*" + "*".join(factors))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return f"CPoly({self.render()})"


class Polynomial:
    """Sparse polynomial: nonzero coefficients indexed by Term."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[Term, object] | None = None):
        self.c = {t: v for t, v in (coeffs or {}).items() if v}

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def monomial(t: Term, coeff=1) -> "Polynomial":
        return Polynomial({t: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def support(self) -> tuple[Term, ...]:
        return tuple(sorted(self.c, key=deglex_key, reverse=True))

    def coeff(self, t: Term):
        return self.c.get(t, 0)

    def degree(self) -> int:
        return max((t.degree() for t in self.c), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.c)
        for t, v in other.c.items():
            w = out.get(t, 0) + v
            if w:
                out[t] = w
            else:
                out.pop(t, None)
        p = Polynomial()
        p.c = out
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.c)
        for t, v in other.c.items():
            w = out.get(t, 0) - v
            if w:
                out[t] = w
            else:
                out.pop(t, None)
        p = Polynomial()
        p.c = out
        return p

    def __neg__(self) -> "Polynomial":
        return Polynomial({t: -v for t, v in self.c.items()})

    def scale(self, coeff) -> "Polynomial":
        if not coeff:
            return Polynomial()
        return Polynomial({t: coeff * v for t, v in self.c.items()})

    def mul_term(self, t: Term, coeff=1) -> "Polynomial":
        if not coeff:
            return Polynomial()
        return Polynomial({u * t: coeff * v for u, v in self.c.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Term, object] = {}
        for t, v in self.c.items():
            for u, w in other.c.items():
                key = t * u
                s = out.get(key, 0) + v * w
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        p = Polynomial()
        p.c = out
        return p

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial({t: fn(v) for t, v in self.c.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.c == other.c

    def __repr__(self):
        return f"Polynomial({self.c!r})"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational literal {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a sum of rational-coefficient monomials, e.g. `x^2*y - 2/3*x + 1`."""
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ValueError("empty polynomial expression")
    chunks: list[tuple[int, str]] = []
    sign = 1
    buf: list[str] = []
    for ch in s:
        if ch in "+-":
            token = "".join(buf)
            if token:
                chunks.append((sign, token))
                buf = []
                sign = 1
            if ch == "-":
                sign = -sign
            continue
        buf.append(ch)
    token = "".join(buf)
    if token:
        chunks.append((sign, token))
    if not chunks:
        raise ValueError(f"cannot parse polynomial {text!r}")

    index = {name: i for i, name in enumerate(variables)}
    total = Polynomial()
    for sgn, chunk in chunks:
        coeff = Fraction(sgn)
        exps = [0] * len(variables)
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"cannot parse monomial {chunk!r}")
            if factor[0].isdigit():
                coeff *= parse_rational(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            exps[index[name]] += int(power) if power else 1
        total = total + Polynomial.monomial(Term(exps), coeff)
    return total


def format_polynomial(p: Polynomial, variables: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for t in p.support():
        v = p.c[t]
        tstr = format_term(t, variables)
        if isinstance(v, CPoly):
            body = f"({v.render()})" if len(v.c) > 1 else v.render()
            parts.append(body if tstr == "1" else f"{body}*{tstr}")
        elif tstr == "1":
            parts.append(str(v))
        elif v == 1:
            parts.append(tstr)
        elif v == -1:
            parts.append("-" + tstr)
        else:
            parts.append(f"{v}*{tstr}")
    text = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            text += " - " + piece[1:]
        else:
            text += " + " + piece
    return text


def poly_to_doc(p: Polynomial, variables: Sequence[str]) -> dict[str, str]:
    """JSON-ready map from canonical term strings to coefficient strings."""
    out = {}
    for t, v in p.c.items():
        key = format_term(t, variables)
        out[key] = v.render() if isinstance(v, CPoly) else str(v)
    return out


def poly_from_doc(doc: Mapping[str, str], variables: Sequence[str]) -> Polynomial:
    coeffs = {}
    for tstr, cstr in doc.items():
        t = parse_term(tstr, variables)
        coeffs[t] = coeffs.get(t, Fraction(0)) + parse_rational(cstr)
    return Polynomial(coeffs)
