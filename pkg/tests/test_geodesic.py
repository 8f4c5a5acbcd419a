from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from nilfinsler.catalog import PRESET_IDS, build, claims, sample_points
from nilfinsler.exactalg import ParamContext, Polynomial
from nilfinsler.geodesic import (
    ComponentClaim,
    component_residuals,
    geodesic_system,
    numeric_component_scan,
    point_in_component,
    verify_component,
)
from nilfinsler.liealg import MetricLieAlgebra


def claim(entry, name, zero, relations=(), **kw):
    return ComponentClaim(name, frozenset(k - 1 for k in zero),
                          tuple(entry.poly(r) for r in relations), **kw)


def test_l57_equations_literal():
    e = build("l57")
    eqs = geodesic_system(e.algebra).equations
    quad = e.poly("y2*(a*y3+b*y4+c*y5)+y3*(d*y4+f*y5)+g*y4*y5")
    assert eqs[0] == -quad
    assert eqs[1] in (e.poly("y1*(a*y3+b*y4+c*y5)"), -e.poly("y1*(a*y3+b*y4+c*y5)"))
    assert eqs[2] in (e.poly("y1*(d*y4+f*y5)"), -e.poly("y1*(d*y4+f*y5)"))
    assert eqs[3] in (e.poly("g*y1*y5"), -e.poly("g*y1*y5"))
    assert eqs[4].is_zero()


@pytest.mark.parametrize("preset", PRESET_IDS)
def test_equations_are_quadratic_forms(preset):
    system = geodesic_system(build(preset).algebra)
    ys = system.variables
    ctx = system.context.extend(["t"])
    t = Polynomial.symbol("t", ctx)
    for eq in system.equations:
        assert eq.is_homogeneous(ys, 2) or eq.is_zero()
        eq = eq.with_context(ctx)
        scaled = eq.substitute({y: t * Polynomial.symbol(y, ctx) for y in ys})
        assert scaled == eq * t ** 2


def test_abelian_everything_geodesic():
    g = MetricLieAlgebra(3, {}, ParamContext())
    system = geodesic_system(g)
    assert all(e.is_zero() for e in system.equations)
    found = numeric_component_scan(system, {}, samples=1, seed=0)
    assert found and all(r.satisfied for r in found)


def test_verify_component_examples():
    l55 = build("l55")
    assert verify_component(geodesic_system(l55.algebra), claim(l55, "E5", [1, 2, 3, 4]))
    l56 = build("l56")
    assert verify_component(geodesic_system(l56.algebra),
                            claim(l56, "quadric", [1, 5], ["a*y2*y3+b*y2*y4+d*y3*y4"]))
    l57 = build("l57")
    s57 = geodesic_system(l57.algebra)
    assert verify_component(s57, claim(l57, "E3", [1, 2, 4, 5]))
    # E1 + E3 is not geodesic
    assert not verify_component(s57, claim(l57, "E1,E3", [2, 4, 5]))
    assert component_residuals(s57, claim(l57, "E1,E3", [2, 4, 5]))


def test_certificate_needs_nonvanishing_multiplier():
    e = build("l59")
    system = geodesic_system(e.algebra)
    rels = ["y1*(k*y3+l*y4+m*y5)-q*y3*y5", "p*y1*y4+q*y2*y5"]
    cert = {0: (e.poly("y1"), (e.poly("-y2"), e.poly("-y3")))}
    good = claim(e, "y1 != 0", [], rels, nonvanishing=frozenset({0}), certificates=cert)
    assert verify_component(system, good)
    # same certificate without the nonvanishing assumption is rejected
    bad = claim(e, "no assumption", [], rels, certificates=cert)
    assert not verify_component(system, bad)


def _l57_exhaustive(point):
    """Case analysis at a=d=g=1, b=c=f=0."""
    y1, y2, y3, y4, y5 = point
    if y1:
        return y3 == y4 == y5 == 0
    return y2 * y3 + y3 * y4 + y4 * y5 == 0


def test_l57_scan_at_simple_point():
    e = build("l57")
    params = {"a": 1, "b": 0, "c": 0, "d": 1, "f": 0, "g": 1}
    found = numeric_component_scan(geodesic_system(e.algebra), params, samples=3, seed=5,
                                   claims=claims(e, "stated"))
    assert found
    for r in found:
        assert r.satisfied and _l57_exhaustive(r.point)
        assert r.component is not None


def test_twostep_i_solution_set():
    """lam y1 y5 = lam y2 y5 = mu y3 y5 = mu y4 y5 = 0 iff y5 = 0 or Y in span{E5}."""
    e = build("twostep_i")
    system = geodesic_system(e.algebra)
    params = {"lam": 1, "mu": 1}
    found = numeric_component_scan(system, params, samples=3, seed=1)
    assert found
    for r in found:
        y = r.point
        assert y[4] == 0 or not any(y[:4])
    # E1 solves the system but is outside the stated components
    e1 = [Fraction(1), 0, 0, 0, 0]
    assert system.is_solution(e1, params)
    assert not any(point_in_component(e1, c, system.variables, params) for c in claims(e, "stated"))
    assert any(point_in_component(e1, c, system.variables, params) for c in claims(e, "derived"))


def test_twostep_i_exhaustive_small_grid():
    system = geodesic_system(build("twostep_i").algebra)
    params = {"lam": 2, "mu": 1}
    for y in itertools.product([-1, 0, 1], repeat=5):
        assert system.is_solution(y, params) == (y[4] == 0 or not any(y[:4]))


@pytest.mark.parametrize("preset", ["twostep_ii", "twostep_iii", "l57", "l56", "l55", "l59"])
def test_scan_outputs_are_solutions_and_scale(preset):
    e = build(preset)
    system = geodesic_system(e.algebra)
    for point in sample_points(e, 2, seed=4):
        C = oracle.structure_constants(oracle.brackets(preset, point))
        for r in numeric_component_scan(system, point, samples=1, seed=2, claims=claims(e, "derived")):
            assert r.satisfied
            assert not any(oracle.geodesic_residuals(C, list(r.point)))
            assert system.is_solution([2 * v for v in r.point], point)
            assert r.component is not None
            lead = next(v for v in r.point if v)
            assert lead == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=5, max_size=5))
def test_residuals_match_oracle(y):
    e = build("l56")
    params = {"a": 1, "b": 2, "c": -1, "d": Fraction(1, 2), "f": 3, "g": 1, "h": 2}
    system = geodesic_system(e.algebra)
    C = oracle.structure_constants(oracle.brackets("l56", {k: Fraction(v) for k, v in params.items()}))
    assert system.residuals(y, params) == oracle.geodesic_residuals(C, y)


def test_scan_is_deterministic():
    e = build("l59")
    system = geodesic_system(e.algebra)
    point = sample_points(e, 1, seed=0)[0]
    a = numeric_component_scan(system, point, samples=2, seed=9)
    b = numeric_component_scan(system, point, samples=2, seed=9)
    assert a == b
