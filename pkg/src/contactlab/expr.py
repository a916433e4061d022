"""Exact exponential-polynomial scalar functions on a coordinate chart.

Elements are finite sums ``c * x^a * exp(p(x))`` with rational ``c``, a
monomial multi-index ``a`` and a rational polynomial ``p``.  The family
``{x^a exp(p)}`` over distinct ``(a, p)`` is linearly independent, so a
canonical sparse map gives a decidable zero test.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Mono = tuple  # tuple[int, ...]
# A polynomial exponent is a sorted tuple of (mono, Fraction) pairs, no zeros.
PolyKey = tuple


class ChartMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Malformed expression text; ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        self.message = message
        super().__init__(f"{message} at position {pos}")


class DivisionError(ArithmeticError):
    pass


class NonMonomialDivisor(DivisionError):
    pass


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names of a single chart."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        for c in coords:
            if not isinstance(c, str) or not _IDENT.fullmatch(c) or c == "exp":
                raise ValueError(f"invalid coordinate name {c!r}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        try:
            return self.coords.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r} on chart {self.coords}") from None

    def __str__(self):
        return "(" + ", ".join(self.coords) + ")"


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def _mono_add(a: Mono, b: Mono) -> Mono:
    return tuple(i + j for i, j in zip(a, b))


def _poly_add(p: PolyKey, q: PolyKey) -> PolyKey:
    if not p:
        return q
    if not q:
        return p
    acc = dict(p)
    for m, c in q:
        v = acc.get(m, 0) + c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return tuple(sorted(acc.items()))


def _poly_neg(p: PolyKey) -> PolyKey:
    return tuple((m, -c) for m, c in p)


def _mono_order(m: Mono):
    # graded-lex: total degree, then lex with earlier coordinates first
    return (sum(m), tuple(-i for i in m))


def _poly_order(p: PolyKey):
    return tuple((_mono_order(m), c) for m, c in sorted(p, key=lambda t: _mono_order(t[0])))


class Expr:
    """Immutable element of the exponential-polynomial ring on ``chart``."""

    __slots__ = ("chart", "_terms", "_hash")

    def __init__(self, chart: Chart, terms: Mapping | None = None, _trusted: bool = False):
        self.chart = chart
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for (mono, pkey), c in (terms or {}).items():
                c = _frac(c)
                mono = tuple(int(i) for i in mono)
                if len(mono) != chart.dim or any(i < 0 for i in mono):
                    raise ValueError(f"bad monomial index {mono}")
                pkey = tuple(sorted((tuple(m), _frac(q)) for m, q in pkey if q))
                if c:
                    key = (mono, pkey)
                    v = clean.get(key, 0) + c
                    if v:
                        clean[key] = v
                    else:
                        clean.pop(key)
            self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, chart: Chart, value=0) -> "Expr":
        value = _frac(value)
        if not value:
            return cls(chart, {}, _trusted=True)
        return cls(chart, {((0,) * chart.dim, ()): value}, _trusted=True)

    @classmethod
    def coord(cls, chart: Chart, name: str) -> "Expr":
        i = chart.index(name)
        mono = tuple(1 if k == i else 0 for k in range(chart.dim))
        return cls(chart, {(mono, ()): Fraction(1)}, _trusted=True)

    def exp(self) -> "Expr":
        """``exp`` of an exp-free polynomial."""
        if not self.is_polynomial():
            raise ValueError("exp argument must be an exp-free polynomial")
        pkey = tuple(sorted((m, c) for (m, _), c in self._terms.items()))
        return Expr(self.chart, {((0,) * self.chart.dim, pkey): Fraction(1)}, _trusted=True)

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return all(not p for (_, p) in self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) and not p for (m, p) in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def as_monomial(self):
        """``(c, a, p)`` if this is a single term, else ``None``."""
        if len(self._terms) != 1:
            return None
        (m, p), c = next(iter(self._terms.items()))
        return c, m, p

    def depends_on(self, name: str) -> bool:
        i = self.chart.index(name)
        for (m, p) in self._terms:
            if m[i] or any(mm[i] for mm, _ in p):
                return True
        return False

    # ring operations
    def _check(self, other) -> "Expr":
        if isinstance(other, Expr):
            if other.chart != self.chart:
                raise ChartMismatch(f"charts differ: {self.chart} vs {other.chart}")
            return other
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return Expr.const(self.chart, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for k, c in other._terms.items():
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                del acc[k]
        return Expr(self.chart, acc, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Expr(self.chart, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for (m1, p1), c1 in self._terms.items():
            for (m2, p2), c2 in other._terms.items():
                key = (_mono_add(m1, m2), _poly_add(p1, p2))
                v = acc.get(key, 0) + c1 * c2
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
        return Expr(self.chart, acc, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("power must be a non-negative integer")
        out = Expr.const(self.chart, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return div_exact(self, other)

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # calculus
    def partial(self, coord) -> "Expr":
        i = coord if isinstance(coord, int) else self.chart.index(coord)
        if not 0 <= i < self.chart.dim:
            raise KeyError(f"coordinate index {i} out of range")
        acc: dict = {}

        def bump(key, c):
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)

        for (m, p), c in self._terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                bump((mm, p), c * m[i])
            for pm, q in p:
                if pm[i]:
                    dm = pm[:i] + (pm[i] - 1,) + pm[i + 1:]
                    bump((_mono_add(m, dm), p), c * q * pm[i])
        return Expr(self.chart, acc, _trusted=True)

    def eval(self, point: Sequence[float]) -> float:
        if len(point) != self.chart.dim:
            raise ValueError(f"point has {len(point)} entries, chart dim is {self.chart.dim}")
        x = [float(v) for v in point]
        total = 0.0
        for (m, p), c in self._terms.items():
            val = float(c)
            for xi, k in zip(x, m):
                if k:
                    val *= xi ** k
            if p:
                val *= math.exp(_eval_poly(p, x))
            total += val
        return total

    # printing
    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: (_mono_order(kv[0][0]), _poly_order(kv[0][1])))

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for n, ((m, p), c) in enumerate(self.sorted_items()):
            body = _term_body(self.chart, abs(c), m, p)
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Expr({str(self)!r})"


def _eval_poly(p: PolyKey, x) -> float:
    total = 0.0
    for m, c in p:
        v = float(c)
        for xi, k in zip(x, m):
            if k:
                v *= xi ** k
        total += v
    return total


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_factors(chart: Chart, m: Mono) -> list:
    return [name if k == 1 else f"{name}^{k}" for name, k in zip(chart.coords, m) if k]


def _term_body(chart: Chart, c: Fraction, m: Mono, p: PolyKey) -> str:
    factors = _mono_factors(chart, m)
    if p:
        arg = Expr(chart, {(pm, ()): q for pm, q in p}, _trusted=True)
        factors.append(f"exp({arg})")
    if not factors:
        return _fmt_rational(c)
    if c == 1:
        return "*".join(factors)
    return _fmt_rational(c) + "*" + "*".join(factors)


def is_zero(e: Expr) -> bool:
    return e.is_zero()


def eq(a: Expr, b: Expr) -> bool:
    if a.chart != b.chart:
        raise ChartMismatch(f"charts differ: {a.chart} vs {b.chart}")
    return a == b


def partial(e: Expr, coord) -> Expr:
    return e.partial(coord)


def div_exact(num: Expr, den: Expr) -> Expr:
    """Quotient by a single-term divisor ``c x^a exp(p)``.

    Raises ``NonMonomialDivisor`` for sums and ``DivisionError`` when some
    monomial of ``num`` is not divisible by ``x^a``.
    """
    if num.chart != den.chart:
        raise ChartMismatch(f"charts differ: {num.chart} vs {den.chart}")
    mono = den.as_monomial()
    if mono is None:
        if den.is_zero():
            raise DivisionError("division by zero")
        raise NonMonomialDivisor(f"divisor {den} is not a single monomial")
    c, a, p = mono
    neg_p = _poly_neg(p)
    acc = {}
    for (m, q), k in num.items():
        if any(mi < ai for mi, ai in zip(m, a)):
            raise DivisionError(f"monomial of {num} not divisible by {den}")
        acc[(tuple(mi - ai for mi, ai in zip(m, a)), _poly_add(q, neg_p))] = k / c
    return Expr(num.chart, acc, _trusted=True)


def exp_of(sigma: Expr) -> Expr:
    return sigma.exp()


# parser

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.take()

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                e = e * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division by non-unit (only nonzero rational divisors allowed)",
                                     tok[2], self.text)
                e = e * Expr.const(self.chart, 1 / rhs.constant_value())
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.power()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "int":
            self.take()
            num = Fraction(int(val))
            # rational literal "p/q"; otherwise "/" is left for term()
            if self.peek()[:2] == ("op", "/") and self.peek(1)[0] == "int":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ParseError("zero denominator", self.toks[self.i - 1][2], self.text)
                num = num / den
            return Expr.const(self.chart, num)
        if kind == "ident":
            self.take()
            if val == "exp":
                lp = self.peek()
                if lp[:2] != ("op", "("):
                    self.fail("'exp' must be followed by '('")
                self.take()
                inner_start = self.peek()[2]
                arg = self.expr()
                self.expect(")")
                if not arg.is_polynomial():
                    raise ParseError("nested exponential: exp argument must be a polynomial",
                                     inner_start, self.text)
                return arg.exp()
            if val not in self.chart.coords:
                raise ParseError(f"unknown identifier {val!r}", pos, self.text)
            return Expr.coord(self.chart, val)
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.fail(f"unexpected token {val or 'end of input'!r}")


def parse(text: str, chart: Chart) -> Expr:
    """Parse ``text`` in the expression grammar on ``chart``."""
    return _Parser(text, chart).parse()


def as_expr(value, chart: Chart) -> Expr:
    """Coerce strings, numbers and Exprs to an Expr on ``chart``."""
    if isinstance(value, Expr):
        if value.chart != chart:
            raise ChartMismatch(f"charts differ: {value.chart} vs {chart}")
        return value
    if isinstance(value, str):
        return parse(value, chart)
    return Expr.const(chart, value)


def sum_exprs(chart: Chart, items: Iterable[Expr]) -> Expr:
    out = Expr.const(chart, 0)
    for e in items:
        out = out + e
    return out
