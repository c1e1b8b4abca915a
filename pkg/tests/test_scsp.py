from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from conftest import scsps
from softgames import FUZZY, WEIGHTED, SoftConstraint, Variable, make_scsp, project
from softgames.catalog import csp_consistent, csp_inconsistent, fuzzy_chain
from softgames.errors import InvalidProblem, KindMismatch, NotClassical, UnknownVariable
from softgames.scsp import Scsp


def test_preference_combines_projections():
    p = fuzzy_chain()
    assert p.preference("bbb") == Fraction(1, 2)
    assert p.preference({"x": "a", "y": "a", "z": "b"}) == Fraction(3, 10)


def test_project_keeps_scope_order():
    assert project({"x": "a", "y": "b", "z": "c"}, ("z", "x")) == ("c", "a")
    with pytest.raises(UnknownVariable):
        project({"x": "a"}, ("q",))


def test_optimal_set_and_values():
    assert fuzzy_chain().enumerate_optimal() == [(("b", "b", "b"), Fraction(1, 2))]


def test_consistency():
    assert not csp_inconsistent().is_consistent()
    assert csp_consistent().is_consistent()
    assert csp_consistent().solutions() == [("a", "a", "a")]
    with pytest.raises(NotClassical):
        fuzzy_chain().is_consistent()


def test_problem_validation():
    x = Variable("x", ("a", "b"))
    with pytest.raises(UnknownVariable):
        Scsp(FUZZY, [x], [SoftConstraint(("y",), {("a",): Fraction(0)})])
    with pytest.raises(InvalidProblem):  # table not total
        Scsp(FUZZY, [x], [SoftConstraint(("x",), {("a",): Fraction(0)})])
    with pytest.raises(KindMismatch):
        make_scsp(WEIGHTED, {"x": "ab"}, [(("x",), {"a": Fraction(1, 2), "b": Fraction(-1)})])


def test_no_constraints_makes_everything_optimal():
    p = make_scsp(WEIGHTED, {"x": "ab", "y": "ab"})
    assert [s for s, _ in p.enumerate_optimal()] == [tuple(a + b) for a in "ab" for b in "ab"]
    assert all(v == 0 for _, v in p.enumerate_optimal())


@given(scsps())
def test_preference_matches_oracle(p):
    for s in p.assignments():
        assert p.preference(s) == oracles.preference(p, s)


@given(scsps())
def test_optimal_set_matches_oracle(p):
    assert [s for s, _ in p.enumerate_optimal()] == oracles.optimal(p)


@given(scsps())
def test_optimal_values_are_pairwise_incomparable_or_equal(p):
    rows = p.enumerate_optimal()
    for _, u in rows:
        for _, v in rows:
            assert not p.semiring.lt(u, v)
