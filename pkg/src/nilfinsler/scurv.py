"""S-curvature of left-invariant Randers metrics F = alpha + beta.

For X dual to beta and Y a tangent vector at the identity::

    S(Y) = (n+1)/2 * { <[X,Y], <Y,X>X - Y> / F(Y) - <[X,Y], X> }

When X is orthogonal to the derived subalgebra the second term vanishes and
the numerator collapses to <[Y,X], Y>.  F(Y) is kept as a symbolic marker;
only numeric evaluation introduces the square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import ExactAlgError, Polynomial, UsageError, as_fraction
from .finsler import is_orthogonal_to, randers_norm_check
from .liealg import AlgebraVector, MetricLieAlgebra, bracket, derived_subalgebra, inner

__all__ = [
    "SCurvExpression",
    "RationalInterval",
    "DomainError",
    "InvalidMetricError",
    "s_curvature",
    "s_curvature_eval",
    "sqrt_enclosure",
]


class DomainError(ExactAlgError, ValueError):
    """Evaluation outside the domain (Y = 0)."""


class InvalidMetricError(ExactAlgError, ValueError):
    """||X|| >= 1, so alpha + beta is not a Randers metric."""


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}

    def __str__(self) -> str:
        return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


@dataclass(frozen=True)
class SCurvExpression:
    numerator: Polynomial
    scale: Fraction
    correction: Polynomial
    reduced: bool
    x: AlgebraVector
    y_symbols: tuple

    def to_text(self) -> str:
        num = self.numerator.to_text()
        body = f"({num}) / F(Y)"
        if not self.correction.is_zero():
            body += f" - ({self.correction.to_text()})"
        return f"S(Y) = {_scale_text(self.scale)} {{ {body} }}"

    def to_latex(self) -> str:
        body = r"\dfrac{" + self.numerator.to_latex() + "}{F(Y)}"
        if not self.correction.is_zero():
            body += r" - \left(" + self.correction.to_latex() + r"\right)"
        s = self.scale
        scale = str(s.numerator) if s.denominator == 1 else rf"\frac{{{s.numerator}}}{{{s.denominator}}}"
        return f"S(Y)={scale}\\bigg\\{{ {body} \\bigg\\}}"

    def to_json(self) -> dict:
        return {
            "scale": str(self.scale),
            "numerator": self.numerator.to_json(),
            "numerator_text": self.numerator.to_text(),
            "correction": self.correction.to_json(),
            "reduced": self.reduced,
            "denominator": "F(Y)",
        }


def _scale_text(s: Fraction) -> str:
    return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"


def s_curvature(g: MetricLieAlgebra, x: AlgebraVector) -> SCurvExpression:
    """Symbolic S-curvature for the Randers metric defined by ``x``."""
    if len(x) != g.dim:
        raise UsageError(f"x has {len(x)} coordinates, algebra has dimension {g.dim}")
    names = [f"y{k + 1}" for k in range(g.dim)]
    ctx = x[0].context.merge(g.context)
    ctx = ctx.extend([s for s in names if s not in ctx])
    gg = g.with_context(ctx)
    xv = AlgebraVector(c.with_context(ctx) for c in x)
    Y = AlgebraVector(Polynomial.symbol(s, ctx) for s in names)
    xy = bracket(gg, xv, Y)
    correction = inner(xy, xv)
    scale = Fraction(g.dim + 1, 2)
    if is_orthogonal_to(xv, derived_subalgebra(gg)):
        numerator = inner(bracket(gg, Y, xv), Y)
        return SCurvExpression(numerator, scale, Polynomial.zero(ctx), True, xv, tuple(names))
    numerator = inner(xy, xv * inner(Y, xv) - Y)
    return SCurvExpression(numerator, scale, correction, False, xv, tuple(names))


def sqrt_enclosure(r: Fraction, bits: int = 64) -> Fraction | RationalInterval:
    """Exact sqrt(r) if rational, else an interval of width at most 2**-bits."""
    r = as_fraction(r)
    if r < 0:
        raise DomainError("square root of a negative number")
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    # sqrt(p/q) = sqrt(p*q)/q
    scale = 1 << bits
    m = math.isqrt(p * q * scale * scale)
    return RationalInterval(Fraction(m, q * scale), Fraction(m + 1, q * scale))


def _bind_x(expr: SCurvExpression, x: Sequence[Fraction]) -> dict:
    bindings: dict = {}
    for i, (sym, val) in enumerate(zip(expr.x, x)):
        if sym.is_constant():
            if sym.constant_value() != val:
                raise UsageError(f"x coordinate {i + 1} is fixed to {sym.constant_value()}")
            continue
        syms = sym.symbols()
        if len(syms) != 1 or sym != Polynomial.symbol(next(iter(syms)), sym.context):
            raise UsageError(f"x coordinate {i + 1} is not a bare symbol: {sym.to_text()}")
        bindings[next(iter(syms))] = val
    return bindings


def s_curvature_eval(expr: SCurvExpression, y: Sequence, x: Sequence,
                     params: Mapping[str, object] | None = None,
                     tolerance: Fraction = Fraction(1, 10**12)) -> Fraction | RationalInterval:
    """Numeric S(y); a rational interval when |y| is irrational."""
    y = [as_fraction(v) for v in y]
    x = [as_fraction(v) for v in x]
    n = len(expr.y_symbols)
    if len(y) != n or len(x) != n:
        raise UsageError(f"expected {n} coordinates for x and y")
    if not any(y):
        raise DomainError("S-curvature is undefined at y = 0")
    if not randers_norm_check(x):
        raise InvalidMetricError("||X|| must be < 1 for a Randers metric")
    values = {s: as_fraction(v) for s, v in (params or {}).items()}
    values.update(_bind_x(expr, x))
    values.update(zip(expr.y_symbols, y))
    num = expr.numerator.eval(values)
    corr = expr.correction.eval(values)
    xy = sum(a * b for a, b in zip(x, y))
    norm2 = sum(v * v for v in y)
    bits = 64
    while True:
        root = sqrt_enclosure(norm2, bits)
        if isinstance(root, Fraction):
            return expr.scale * (num / (root + xy) - corr)
        # F > 0 on the interval since |<x,y>| < |y|
        a = expr.scale * (num / (root.lo + xy) - corr)
        b = expr.scale * (num / (root.hi + xy) - corr)
        if a == b:  # numerator vanishes: value is exact
            return a
        out = RationalInterval(min(a, b), max(a, b))
        if out.width <= tolerance:
            return out
        bits *= 2
