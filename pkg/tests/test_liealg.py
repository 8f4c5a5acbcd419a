import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilfinsler.catalog import build
from nilfinsler.exactalg import ParamContext, Polynomial
from nilfinsler.liealg import (
    AlgebraParseError,
    AlgebraVector,
    IndeterminatePivot,
    JacobiError,
    MetricLieAlgebra,
    NotNilpotent,
    bracket,
    derived_subalgebra,
    jacobi_check,
    lower_central_series,
    nilpotency_class,
    orthogonal_complement,
    span_of,
)

EMPTY = ParamContext()


def vec(text, ctx=EMPTY, n=5):
    return AlgebraVector.parse(text, ctx, [f"E{k + 1}" for k in range(n)])


def test_l57_structure():
    g = build("l57").algebra
    assert derived_subalgebra(g).describe() == "span{E3,E4,E5}"
    assert nilpotency_class(g) == 4
    assert orthogonal_complement(g, derived_subalgebra(g)).describe() == "span{E1,E2}"
    assert [s.rank for s in lower_central_series(g)] == [5, 3, 2, 1, 0]


@pytest.mark.parametrize("preset,cls", [("twostep_i", 2), ("twostep_ii", 2), ("twostep_iii", 2),
                                        ("l57", 4), ("l56", 4), ("l55", 3), ("l59", 3)])
def test_nilpotency_classes(preset, cls):
    assert nilpotency_class(build(preset).algebra) == cls


def test_bracket_is_bilinear_and_antisymmetric():
    g = build("l56").algebra
    u = g.vector("E1 + 2*E2")
    v = g.vector("E3 - E2")
    assert bracket(g, u, v) == -bracket(g, v, u)
    assert bracket(g, u, u).is_zero()
    assert bracket(g, u * 3, v) == bracket(g, u, v) * 3


def test_jacobi_violation_names_triple():
    # on (E1,E2,E3) the cyclic sum is [E1,[E2,E3]] = [E1,E4] = E2
    brackets = {(0, 1): vec("E3", n=4), (1, 2): vec("E4", n=4), (0, 3): vec("E2", n=4)}
    with pytest.raises(JacobiError) as exc:
        MetricLieAlgebra(4, brackets, EMPTY)
    assert len(exc.value.triple) == 3
    assert "(E1, E2, E3)" in str(exc.value)
    g = MetricLieAlgebra(4, brackets, EMPTY, check=False)
    assert not jacobi_check(g)


def test_not_nilpotent():
    g = MetricLieAlgebra(2, {(0, 1): vec("E2", n=2)}, EMPTY)
    with pytest.raises(NotNilpotent):
        nilpotency_class(g)


def test_indeterminate_pivot_with_free_parameter():
    ctx = ParamContext(("c",))  # no sign assumption: c may vanish
    g = MetricLieAlgebra(3, {(0, 1): vec("c*E3", ctx, 3)}, ctx)
    with pytest.raises(IndeterminatePivot):
        derived_subalgebra(g)


def test_non_coordinate_spans():
    ctx = ParamContext(("a",), positive={"a"})
    s = span_of([vec("E1 + a*E2", ctx, 3), vec("2*E1 + 2*a*E2", ctx, 3)], 3)
    assert s.rank == 1
    assert not s.is_coordinate()


@st.composite
def two_step(draw):
    """Random two-step algebra on E1..E3 + centre E4, E5."""
    vals = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    brackets = {}
    for i in range(3):
        for j in range(i + 1, 3):
            c4, c5 = draw(vals), draw(vals)
            brackets[(i, j)] = AlgebraVector(Polynomial.constant(x, EMPTY) for x in (0, 0, 0, c4, c5))
    return brackets


@settings(max_examples=40, deadline=None)
@given(two_step())
def test_random_two_step_algebras(brackets):
    g = MetricLieAlgebra(5, brackets, EMPTY)
    assert jacobi_check(g)
    cls = nilpotency_class(g)
    nonzero = any(not v.is_zero() for v in brackets.values())
    assert cls == (2 if nonzero else 1)
    d = derived_subalgebra(g)
    assert d.rank <= 2
    assert orthogonal_complement(g, d).rank == 5 - d.rank


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=3),
       st.fractions(min_value=-4, max_value=4, max_denominator=3))
def test_semidirect_is_nilpotent(s, t):
    # ad(E1) acts nilpotently on span{E2,E3,E4}
    brackets = {(0, 1): vec(f"{s}*E3"), (0, 2): vec(f"{t}*E4"), (0, 3): vec("E5")}
    g = MetricLieAlgebra(5, brackets, EMPTY)
    assert nilpotency_class(g) <= 4


def test_document_round_trip():
    for preset in ("l57", "l59", "twostep_i"):
        g = build(preset).algebra
        doc = json.loads(json.dumps(g.to_document()))
        h = MetricLieAlgebra.from_document(doc)
        assert h.same_structure(g)


@pytest.mark.parametrize("doc,field", [
    ({"dim": 0}, "dim"),
    ({"dim": 2, "basis": ["E1"]}, "basis"),
    ({"dim": 2, "brackets": [{"i": 1, "j": 3, "value": {}}]}, "brackets[0]"),
    ({"dim": 2, "brackets": [{"i": 1, "j": 2, "value": {"E2": "a +"}}], "params": {"free": ["a"]}},
     "brackets[0].value.E2"),
    ({"dim": 2, "metric": [[2, 0], [0, 1]]}, "metric"),
])
def test_document_errors_name_field(doc, field):
    with pytest.raises(AlgebraParseError) as exc:
        MetricLieAlgebra.from_document(doc)
    assert exc.value.field == field


def test_from_json_reports_line():
    with pytest.raises(AlgebraParseError) as exc:
        MetricLieAlgebra.from_json('{\n "dim": 2,\n oops }')
    assert "line 3" in str(exc.value)


def test_reversed_bracket_in_document():
    doc = {"dim": 3, "brackets": [{"i": 2, "j": 1, "value": {"E3": "1"}}]}
    g = MetricLieAlgebra.from_document(doc)
    assert g.basis_bracket(0, 1) == vec("-E3", n=3)
    assert g.structure_constant(1, 0, 2) == Fraction(1)
