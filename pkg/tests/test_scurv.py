from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from nilfinsler.catalog import build
from nilfinsler.exactalg import ParamContext, Polynomial, UsageError
from nilfinsler.finsler import classify
from nilfinsler.liealg import AlgebraVector, MetricLieAlgebra, bracket, inner
from nilfinsler.scurv import (
    DomainError,
    InvalidMetricError,
    RationalInterval,
    s_curvature,
    s_curvature_eval,
    sqrt_enclosure,
)

small = st.fractions(min_value=-2, max_value=2, max_denominator=4)
L57 = {"a": 1, "b": 1, "c": 1, "d": 1, "f": 1, "g": 1}


def const_vector(entry, coords):
    return entry.vector(" + ".join(f"({Fraction(c)})*E{k + 1}" for k, c in enumerate(coords)))


@pytest.mark.parametrize("preset", ["l57", "l56", "l55", "l59"])
def test_stored_numerators(preset):
    e = build(preset)
    want = e.expected["scurvature"]
    s = s_curvature(e.algebra, e.vector(want["x"]))
    assert s.reduced and s.correction.is_zero()
    assert s.numerator == e.poly(want["numerator"])
    assert s.scale == 3


def test_zero_x_gives_zero():
    e = build("l56")
    s = s_curvature(e.algebra, e.vector("0*E1"))
    assert s.numerator.is_zero()


def test_numerator_linear_in_douglas_x():
    e = build("l57")
    s1 = s_curvature(e.algebra, e.vector("E1")).numerator
    s2 = s_curvature(e.algebra, e.vector("E2")).numerator
    s12 = s_curvature(e.algebra, e.vector("2*E1 - 3*E2")).numerator
    assert s12 == s1 * 2 - s2 * 3


@pytest.mark.parametrize("preset", ["l57", "l59"])
def test_numerator_homogeneous_in_y(preset):
    e = build(preset)
    s = s_curvature(e.algebra, e.vector(e.expected["scurvature"]["x"]))
    assert s.numerator.is_homogeneous(s.y_symbols, 2)


def test_non_douglas_x_uses_full_formula():
    e = build("l57")
    s = s_curvature(e.algebra, e.vector("1/2*E1 + 1/2*E3"))
    assert not s.reduced
    # only [E1,E2] = a E3 has a component along X
    assert s.correction == e.poly("1/4*a*y2").with_context(s.correction.context)
    assert " - (" in s.to_text()


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=5, max_size=5), st.lists(small, min_size=5, max_size=5))
def test_eval_matches_decimal_oracle(xs, y):
    scale = max(Fraction(1), 2 * sum(v * v for v in xs))
    x = [v / scale for v in xs]  # |x|^2 <= 1/4
    if not any(y):
        return
    e = build("l57")
    C = oracle.structure_constants(oracle.brackets("l57", {k: Fraction(v) for k, v in L57.items()}))
    want = oracle.s_curvature_decimal(C, x, y)
    got = s_curvature_eval(s_curvature(e.algebra, const_vector(e, x)), y, x, L57)
    if isinstance(got, RationalInterval):
        assert got.width <= Fraction(1, 10**12)
        lo, hi = (Decimal(v.numerator) / Decimal(v.denominator) for v in (got.lo, got.hi))
        assert lo - Decimal("1e-40") <= want <= hi + Decimal("1e-40")
    else:
        assert abs(Decimal(got.numerator) / Decimal(got.denominator) - want) < Decimal("1e-40")


def test_irrational_norm_gives_tight_interval():
    e = build("l57")
    x = [Fraction(1, 2), 0, 0, 0, 0]
    y = [0, 0, 1, 1, 0]
    expr = s_curvature(e.algebra, e.vector("lam1*E1 + lam2*E2"))
    got = s_curvature_eval(expr, y, x, L57)
    assert isinstance(got, RationalInterval)
    assert got.width <= Fraction(1, 10**12)
    C = oracle.structure_constants(oracle.brackets("l57", {k: Fraction(v) for k, v in L57.items()}))
    want = oracle.s_curvature_decimal(C, x, y)
    lo, hi = (Decimal(v.numerator) / Decimal(v.denominator) for v in (got.lo, got.hi))
    assert lo <= want <= hi


def test_rational_norm_is_exact():
    e = build("l57")
    x = [Fraction(1, 2), Fraction(1, 3), 0, 0, 0]
    y = [3, 4, 0, 0, 0]
    expr = s_curvature(e.algebra, e.vector("lam1*E1 + lam2*E2"))
    got = s_curvature_eval(expr, y, x, L57)
    # [X,Y] lies in [g,g] which is orthogonal to both X and Y here
    assert got == 0
    y = [0, 3, 4, 0, 0]
    got = s_curvature_eval(expr, y, x, L57)
    # numerator (y1 lam2 - y2 lam1)(a y3 + ...) = -3/2 * 4 = -6, F = 5 + 1 = 6
    assert got == Fraction(3) * Fraction(-6, 6)


def test_l59_vanishes_on_e4():
    e = build("l59")
    expr = s_curvature(e.algebra, e.vector("lam2*E2"))
    params = {"k": 1, "l": 2, "m": 3, "p": 1, "q": 2}
    assert s_curvature_eval(expr, [0, 0, 0, 1, 0], [0, Fraction(1, 2), 0, 0, 0], params) == 0


def test_domain_and_metric_errors():
    e = build("l57")
    expr = s_curvature(e.algebra, e.vector("lam1*E1 + lam2*E2"))
    with pytest.raises(DomainError):
        s_curvature_eval(expr, [0] * 5, [Fraction(1, 2), 0, 0, 0, 0], L57)
    with pytest.raises(InvalidMetricError):
        s_curvature_eval(expr, [1, 0, 0, 0, 0], [Fraction(3, 5), Fraction(4, 5), 0, 0, 0], L57)
    with pytest.raises(UsageError):
        s_curvature_eval(expr, [1, 0, 0], [0, 0, 0], L57)
    with pytest.raises(UsageError):
        s_curvature(e.algebra, AlgebraVector(list(e.vector("E1"))[:3]))


def test_eval_rejects_x_outside_expression():
    e = build("l57")
    expr = s_curvature(e.algebra, e.vector("lam1*E1"))
    with pytest.raises(UsageError):
        s_curvature_eval(expr, [1, 0, 0, 0, 0], [0, Fraction(1, 2), 0, 0, 0], L57)


@settings(max_examples=50)
@given(st.fractions(min_value=0, max_value=100, max_denominator=50))
def test_sqrt_enclosure(r):
    root = sqrt_enclosure(r, bits=40)
    if isinstance(root, Fraction):
        assert root * root == r
    else:
        assert root.lo ** 2 <= r <= root.hi ** 2
        assert root.width <= Fraction(1, 2**40)


@pytest.mark.parametrize("preset", ["twostep_i", "twostep_ii", "twostep_iii", "l57", "l56", "l55", "l59"])
def test_reduced_form_agrees_with_full_formula(preset):
    e = build(preset)
    ds = classify(e.algebra).douglas_space
    names = ds.span_names()
    x = e.vector(" + ".join(f"lam{n[1:]}*{n}" for n in names))
    s = s_curvature(e.algebra, x)
    assert s.reduced
    g = e.algebra.with_context(s.numerator.context)
    Y = AlgebraVector(Polynomial.symbol(v, s.numerator.context) for v in s.y_symbols)
    xy = bracket(g, s.x, Y)
    assert inner(xy, s.x).is_zero()
    assert inner(xy, s.x * inner(Y, s.x) - Y) == s.numerator


def test_scale_follows_dimension():
    ctx = ParamContext()
    g = MetricLieAlgebra(3, {(0, 1): AlgebraVector(Polynomial.constant(v, ctx) for v in (0, 0, 1))}, ctx)
    s = s_curvature(g, AlgebraVector(Polynomial.constant(v, ctx) for v in (Fraction(1, 2), 0, 0)))
    assert s.scale == 2
    assert s.to_text().startswith("S(Y) = 2 {")


def test_zero_x_evaluates_to_zero():
    e = build("l55")
    s = s_curvature(e.algebra, e.vector("0*E1"))
    params = {"a": 1, "b": 0, "c": 2, "d": 1, "e": 3}
    assert s_curvature_eval(s, [1, 2, 0, 0, 1], [0] * 5, params) == 0
