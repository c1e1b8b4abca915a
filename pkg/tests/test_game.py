from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from conftest import games
from softgames import FUZZY, UTILITY, Player, Product, make_game
from softgames.catalog import prisoners_dilemma
from softgames.errors import InvalidProblem, NotLinearlyOrdered, UnknownPlayer
from softgames.game import GraphicalGame

Q = Fraction


def test_prisoners_dilemma():
    g = prisoners_dilemma()
    assert g.payoff("x1", ("n", "c")) == 4
    assert g.enumerate_nash() == [("n", "n")]
    assert g.enumerate_pareto() == [("c", "c"), ("c", "n"), ("n", "c")]
    assert g.enumerate_nash_and_global_pareto() == []
    assert g.enumerate_pareto_nash() == [("n", "n")]
    assert g.pareto_dominates(("c", "c"), ("n", "n"))
    assert not g.pareto_dominates(("n", "n"), ("c", "c"))


def test_payoff_ignores_non_neighbours():
    g = make_game(
        FUZZY, {"p": "ab", "q": "ab", "r": "ab"},
        {"p": {("a",): Q(1), ("b",): Q(0)},
         "q": {(x, y): Q(1, 2) for x in "ab" for y in "ab"},
         "r": {(x, y): Q(1) if x == y else Q(0) for x in "ab" for y in "ab"}},
        neigh={"p": [], "q": ["p"], "r": ["q"]},
    )
    assert g.local_scope("r") == ("q", "r")
    assert g.payoff("p", "aab") == g.payoff("p", "abb") == 1
    assert g.payoff("r", {"p": "b", "q": "a", "r": "a"}) == 1


def test_game_validation():
    players = [Player("p", ("a",)), Player("q", ("a",))]
    tables = {"p": {("a",): Q(0)}, "q": {("a",): Q(0)}}
    with pytest.raises(InvalidProblem):
        GraphicalGame(FUZZY, players[:1], {"p": []}, {"p": {("a",): Q(0)}})
    with pytest.raises(UnknownPlayer):
        GraphicalGame(FUZZY, players, {"p": ["z"], "q": []}, tables)
    with pytest.raises(InvalidProblem):
        GraphicalGame(FUZZY, players, {"p": ["p"], "q": []}, tables)
    with pytest.raises(InvalidProblem):
        GraphicalGame(FUZZY, players, {"p": [], "q": []}, {"p": {}, "q": {("a",): Q(0)}})
    with pytest.raises(NotLinearlyOrdered):
        GraphicalGame(Product([FUZZY, FUZZY]), players, {"p": [], "q": []},
                      {"p": {("a",): (Q(0), Q(0))}, "q": {("a",): (Q(0), Q(0))}})


def test_utility_game_without_equilibrium_of_matching_pennies():
    win = {("h", "h"): (1, 0), ("h", "t"): (0, 1), ("t", "h"): (0, 1), ("t", "t"): (1, 0)}
    g = make_game(UTILITY, {"a": "ht", "b": "ht"},
                  lambda who, s: Q(win[s]["ab".index(who)]))
    assert g.enumerate_nash() == []
    assert g.enumerate_pareto_nash() == []
    assert len(g.enumerate_pareto()) == 4


@given(games())
def test_nash_matches_oracle(g):
    assert g.enumerate_nash() == oracles.nash(g)
    assert [s for s in g.joint_strategies() if g.is_nash(s)] == oracles.nash(g)


@given(games())
def test_pareto_matches_oracle(g):
    assert g.enumerate_pareto() == oracles.pareto(g)
    assert g.enumerate_pareto_nash() == oracles.pareto_nash(g)
    nash = set(oracles.nash(g))
    assert g.enumerate_nash_and_global_pareto() == [s for s in oracles.pareto(g) if s in nash]


@given(games())
def test_pareto_set_is_nonempty_and_undominated(g):
    front = g.enumerate_pareto()
    assert front
    for s in front:
        assert not any(g.pareto_dominates(t, s) for t in g.joint_strategies())
