"""Exact scalar arithmetic: rationals and sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction`.  A :class:`Polynomial` is an
immutable map ``Monomial -> Fraction`` bound to a :class:`ParamContext` that
registers every symbol it may use, together with sign assumptions
(strictly positive / non-negative) that drive the pivot discipline used by
the linear algebra in :mod:`nilfinsler.liealg`.

Monomials are tuples of ``(symbol, exponent)`` pairs sorted by symbol name,
so they are hashable canonical keys.  Display order is graded lexicographic
over the registered symbol order of the context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "ExactAlgError",
    "ContextMismatch",
    "UsageError",
    "PolynomialParseError",
    "ParamContext",
    "Monomial",
    "Polynomial",
    "as_fraction",
    "poly_add",
    "poly_mul",
    "poly_substitute",
    "poly_is_zero",
    "poly_eval",
]


class ExactAlgError(Exception):
    """Base class for errors raised by the exact algebra layer."""


class UsageError(ExactAlgError, ValueError):
    """Invalid use of an operation (unbound symbol, bad operand...)."""


class ContextMismatch(UsageError):
    """Two polynomials live in incompatible parameter contexts."""


class PolynomialParseError(ExactAlgError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at column {pos + 1} in {text!r}"
        super().__init__(message)


Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...], sorted by symbol name

ONE: Monomial = ()


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational literal: {value!r}") from exc
    raise UsageError(f"expected an exact rational, got {type(value).__name__}")


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for s, e in m2:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial, symbols: Iterable[str] | None = None) -> int:
    if symbols is None:
        return sum(e for _, e in m)
    wanted = set(symbols)
    return sum(e for s, e in m if s in wanted)


def mono_divides(d: Monomial, m: Monomial) -> bool:
    exps = dict(m)
    return all(exps.get(s, 0) >= e for s, e in d)


def mono_div(m: Monomial, d: Monomial) -> Monomial:
    exps = dict(m)
    for s, e in d:
        left = exps.get(s, 0) - e
        if left < 0:
            raise UsageError("monomial does not divide")
        if left:
            exps[s] = left
        else:
            del exps[s]
    return tuple(sorted(exps.items()))


def mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    e2 = dict(m2)
    return tuple((s, min(e, e2[s])) for s, e in m1 if s in e2)


def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for s, e in m2:
        exps[s] = max(exps.get(s, 0), e)
    return tuple(sorted(exps.items()))


@dataclass(frozen=True)
class ParamContext:
    """Ordered symbol registry with sign assumptions.

    ``positive`` symbols are assumed strictly positive, ``nonneg`` symbols
    non-negative.  A symbol may appear in both only if declared so.
    """

    symbols: tuple[str, ...] = ()
    positive: frozenset = field(default_factory=frozenset)
    nonneg: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        if len(set(self.symbols)) != len(self.symbols):
            raise UsageError(f"duplicate symbols in context: {self.symbols}")
        for name in self.symbols:
            if not _IDENT.fullmatch(name):
                raise UsageError(f"invalid symbol name {name!r}")
        unknown = (self.positive | self.nonneg) - set(self.symbols)
        if unknown:
            raise UsageError(f"assumptions on unregistered symbols: {sorted(unknown)}")

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def _index(self) -> dict:
        # cached lazily; frozen dataclass so stash in __dict__
        try:
            return self.__dict__["_idx"]
        except KeyError:
            idx = {s: i for i, s in enumerate(self.symbols)}
            object.__setattr__(self, "_idx", idx)
            return idx

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"symbol {name!r} is not registered") from None

    def extend(self, names: Iterable[str], positive: Iterable[str] = (),
               nonneg: Iterable[str] = ()) -> "ParamContext":
        names = tuple(names)
        clash = [s for s in names if s in self]
        if clash:
            raise UsageError(f"symbols already registered: {clash}")
        return ParamContext(self.symbols + names, self.positive | set(positive),
                            self.nonneg | set(nonneg))

    def extends(self, other: "ParamContext") -> bool:
        """True if ``self`` is ``other`` plus (possibly) trailing symbols."""
        n = len(other.symbols)
        if self.symbols[:n] != other.symbols:
            return False
        shared = set(other.symbols)
        return (self.positive & shared) == other.positive and (self.nonneg & shared) == other.nonneg

    def merge(self, other: "ParamContext") -> "ParamContext":
        if self is other or self == other:
            return self
        if self.extends(other):
            return self
        if other.extends(self):
            return other
        raise ContextMismatch(f"incompatible contexts {self.symbols} and {other.symbols}")

    def sort_key(self, m: Monomial):
        """Graded lex key: higher total degree first, then earlier symbols."""
        idx = self._index
        vec = [0] * len(self.symbols)
        for s, e in m:
            vec[idx[s]] = e
        return (-sum(vec), tuple(-e for e in vec))

    def to_json(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "positive": [s for s in self.symbols if s in self.positive],
            "nonneg": [s for s in self.symbols if s in self.nonneg],
        }


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "context", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None,
                 context: ParamContext | None = None, *, _trusted: bool = False):
        self.context = context if context is not None else ParamContext()
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        for mono, coeff in (terms or {}).items():
            c = as_fraction(coeff)
            if not c:
                continue
            mono = tuple(sorted((s, int(e)) for s, e in dict(mono).items() if e))
            for s, e in mono:
                if e < 0:
                    raise UsageError("negative exponents are not polynomials")
                if s not in self.context:
                    raise UsageError(f"symbol {s!r} is not registered in the context")
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if not clean[mono]:
                del clean[mono]
        self._terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, context: ParamContext) -> "Polynomial":
        return cls({}, context, _trusted=True)

    @classmethod
    def constant(cls, value, context: ParamContext) -> "Polynomial":
        c = as_fraction(value)
        return cls({ONE: c} if c else {}, context, _trusted=True)

    @classmethod
    def symbol(cls, name: str, context: ParamContext) -> "Polynomial":
        context.index(name)
        return cls({((name, 1),): Fraction(1)}, context, _trusted=True)

    @classmethod
    def parse(cls, text: str, context: ParamContext) -> "Polynomial":
        return _Parser(text, context).parse()

    @classmethod
    def from_json(cls, data: list, context: ParamContext) -> "Polynomial":
        terms = {}
        for item in data:
            mono = tuple(sorted((s, int(e)) for s, e in item["monomial"].items()))
            terms[mono] = terms.get(mono, 0) + as_fraction(item["coeff"])
        return cls(terms, context)

    # -- basic queries -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UsageError(f"{self} is not constant")
        return self._terms.get(ONE, Fraction(0))

    def symbols(self) -> set:
        return {s for m in self._terms for s, _ in m}

    def degree(self, symbols: Iterable[str] | None = None) -> int:
        if not self._terms:
            return -1
        symbols = None if symbols is None else tuple(symbols)
        return max(mono_degree(m, symbols) for m in self._terms)

    def is_homogeneous(self, symbols: Iterable[str], degree: int) -> bool:
        symbols = tuple(symbols)
        return all(mono_degree(m, symbols) == degree for m in self._terms)

    def sorted_terms(self) -> list:
        key = self.context.sort_key
        return sorted(self._terms.items(), key=lambda kv: key(kv[0]))

    def leading_term(self):
        if not self._terms:
            raise UsageError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def is_provably_nonzero(self) -> bool:
        """Single term whose symbols are all declared strictly positive."""
        if len(self._terms) != 1:
            return False
        (mono, _), = self._terms.items()
        return all(s in self.context.positive for s, _ in mono)

    def positive_content(self) -> tuple[Fraction, Monomial]:
        """Positive rational content and gcd monomial in positive symbols."""
        if not self._terms:
            return Fraction(1), ONE
        from math import gcd

        num = 0
        den = 1
        g = None
        for mono, c in self._terms.items():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
            pos = tuple((s, e) for s, e in mono if s in self.context.positive)
            g = pos if g is None else mono_gcd(g, pos)
        return Fraction(num, den), g

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other, self.context)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except UsageError:
            return NotImplemented
        ctx = self.context.merge(other.context)
        if len(self._terms) < len(other._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(out, ctx, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()}, self.context, _trusted=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except UsageError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            ctx = self.context.merge(other.context)
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = mono_mul(m1, m2)
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
            return Polynomial(out, ctx, _trusted=True)
        try:
            c = as_fraction(other)
        except UsageError:
            return NotImplemented
        if not c:
            return Polynomial.zero(self.context)
        return Polynomial({m: v * c for m, v in self._terms.items()}, self.context, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by nonzero rational constants
        if isinstance(other, Polynomial):
            other = other.constant_value()
        c = as_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("only non-negative integer powers")
        result = Polynomial.constant(1, self.context)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def div_monomial(self, coeff: Fraction, mono: Monomial) -> "Polynomial":
        """Exact division by ``coeff * mono``; raises if not exact."""
        coeff = as_fraction(coeff)
        out = {}
        for m, c in self._terms.items():
            if not mono_divides(mono, m):
                raise UsageError("inexact monomial division")
            out[mono_div(m, mono)] = c / coeff
        return Polynomial(out, self.context, _trusted=True)

    def with_context(self, context: ParamContext) -> "Polynomial":
        for s in self.symbols():
            context.index(s)
        return Polynomial(self._terms, context, _trusted=True)

    # -- substitution & evaluation ------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Simultaneous substitution of symbols by polynomials or scalars."""
        if not bindings:
            return self
        for name in bindings:
            if name not in self.context:
                raise UsageError(f"cannot bind unregistered symbol {name!r}")
        ctx = self.context
        polys = {}
        for name, value in bindings.items():
            p = value if isinstance(value, Polynomial) else Polynomial.constant(value, ctx)
            ctx = ctx.merge(p.context)
            polys[name] = p
        power_cache: dict = {}

        def power(name, e):
            key = (name, e)
            if key not in power_cache:
                power_cache[key] = polys[name] ** e
            return power_cache[key]

        result = Polynomial.zero(ctx)
        for mono, c in self._terms.items():
            kept = []
            factor = None
            for s, e in mono:
                if s in polys:
                    p = power(s, e)
                    factor = p if factor is None else factor * p
                else:
                    kept.append((s, e))
            term = Polynomial({tuple(kept): c}, ctx, _trusted=True)
            result = result + (term if factor is None else term * factor)
        return result

    def eval(self, point: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        values = {}
        for mono, c in self._terms.items():
            v = c
            for s, e in mono:
                if s not in values:
                    if s not in point:
                        raise UsageError(f"symbol {s!r} is unbound")
                    values[s] = as_fraction(point[s])
                v *= values[s] ** e
            total += v
        return total

    def coefficient_map(self, symbols: Iterable[str]) -> dict:
        """Split into ``{monomial in symbols: coefficient polynomial}``."""
        wanted = set(symbols)
        out: dict = {}
        for mono, c in self._terms.items():
            inner = tuple((s, e) for s, e in mono if s in wanted)
            rest = tuple((s, e) for s, e in mono if s not in wanted)
            out.setdefault(inner, {})[rest] = c
        return {k: Polynomial(v, self.context, _trusted=True) for k, v in out.items()}

    def linear_coefficients(self, symbols: Iterable[str]) -> dict:
        """Coefficients of an expression homogeneous linear in ``symbols``."""
        symbols = tuple(symbols)
        parts = self.coefficient_map(symbols)
        out = {}
        for mono, coeff in parts.items():
            if len(mono) != 1 or mono[0][1] != 1:
                raise UsageError(f"{self} is not linear homogeneous in {symbols}")
            out[mono[0][0]] = coeff
        return out

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            c = as_fraction(other)
        except UsageError:
            return NotImplemented
        return self._terms == ({ONE: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def rational_multiple_of(self, other: "Polynomial") -> Fraction | None:
        """Return c with ``self == c*other`` (other nonzero), else None."""
        if other.is_zero():
            return None
        if self.is_zero():
            return Fraction(0)
        if len(self._terms) != len(other._terms):
            return None
        mono, c_other = next(iter(other._terms.items()))
        c_self = self._terms.get(mono)
        if c_self is None:
            return None
        ratio = c_self / c_other
        for m, c in other._terms.items():
            if self._terms.get(m) != c * ratio:
                return None
        return ratio

    # -- serialization -------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [s if e == 1 else f"{s}^{e}" for s, e in self._display_order(mono)]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def _display_order(self, mono: Monomial):
        idx = self.context._index
        return sorted(mono, key=lambda se: idx[se[0]])

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = "".join(_latex_symbol(s) + (f"^{{{e}}}" if e > 1 else "")
                              for s, e in self._display_order(mono))
            if not factors:
                body = _latex_frac(mag)
            elif mag == 1:
                body = factors
            else:
                body = _latex_frac(mag) + factors
            if i == 0:
                out += ("-" if sign == "-" else "") + body
            else:
                out += f"{sign}{body}"
        return out

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "monomial": {s: e for s, e in self._display_order(m)}}
            for m, c in self.sorted_terms()
        ]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


_GREEK = {"lam": r"{\lambda}", "mu": r"{\mu}"}


def _latex_symbol(name: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if m:
        base, sub = m.groups()
        return f"{_GREEK.get(base, base)}_{{{sub}}}"
    return _GREEK.get(name, name)


def _latex_frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


class _Parser:
    """Recursive-descent parser for ``-3/4*(a^2 + b^2) + c*d``."""

    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")

    def __init__(self, text: str, context: ParamContext):
        self.text = text
        self.context = context
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = self._TOKEN.match(stripped, pos)
            if not m:
                raise PolynomialParseError("unexpected character", text, pos)
            num, ident, op = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", int(num), start))
            elif ident is not None:
                self.tokens.append(("ident", ident, start))
            else:
                self.tokens.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _take(self):
        tok = self._peek()
        if tok is None:
            raise PolynomialParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialParseError("empty polynomial", self.text)
        result = self._expr()
        tok = self._peek()
        if tok is not None:
            raise PolynomialParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return result

    def _expr(self):
        result = self._term()
        while (tok := self._peek()) is not None and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            rhs = self._term()
            result = result + rhs if tok[1] == "+" else result - rhs
        return result

    def _term(self):
        result = self._unary()
        while (tok := self._peek()) is not None and tok[0] == "op" and tok[1] in "*/":
            self.i += 1
            rhs = self._unary()
            if tok[1] == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolynomialParseError("division only by nonzero constants",
                                               self.text, tok[2])
                result = result / rhs.constant_value()
        return result

    def _unary(self):
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            inner = self._unary()
            return -inner if tok[1] == "-" else inner
        return self._power()

    def _power(self):
        base = self._atom()
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            exp = self._take()
            if exp[0] != "num":
                raise PolynomialParseError("exponent must be a non-negative integer",
                                           self.text, exp[2])
            return base ** exp[1]
        return base

    def _atom(self):
        kind, value, pos = self._take()
        if kind == "num":
            return Polynomial.constant(value, self.context)
        if kind == "ident":
            if value not in self.context:
                raise PolynomialParseError(f"unknown symbol {value!r}", self.text, pos)
            return Polynomial.symbol(value, self.context)
        if value == "(":
            inner = self._expr()
            close = self._take()
            if close[1] != ")":
                raise PolynomialParseError("expected ')'", self.text, close[2])
            return inner
        raise PolynomialParseError(f"unexpected {value!r}", self.text, pos)


# -- functional surface -------------------------------------------------------

def _check_same(p: Polynomial, q: Polynomial) -> None:
    p.context.merge(q.context)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same(p, q)
    return p * q


def poly_substitute(p: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    return p.substitute(bindings)


def poly_is_zero(p: Polynomial) -> bool:
    return p.is_zero()


def poly_eval(p: Polynomial, point: Mapping[str, object]) -> Fraction:
    return p.eval(point)


def iter_exponent_vectors(p: Polynomial) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """Yield ``(exponent vector over context order, coefficient)`` pairs."""
    idx = p.context._index
    n = len(p.context.symbols)
    for mono, c in p.items():
        vec = [0] * n
        for s, e in mono:
            vec[idx[s]] = e
        yield tuple(vec), c
