"""The seven worked problems used as goldens by tests and the data/ files."""
from __future__ import annotations

from fractions import Fraction

from .game import GraphicalGame, make_game
from .scsp import Scsp, make_scsp
from .semiring import CLASSICAL, FUZZY, UTILITY, WEIGHTED

AB = ("a", "b")
XYZ = {"x": AB, "y": AB, "z": AB}


def _q(text: str) -> Fraction:
    return Fraction(text)


def _fuzzy(pairs: dict[str, str]) -> dict[str, Fraction]:
    return {k: _q(v) for k, v in pairs.items()}


def fuzzy_chain() -> Scsp:
    """Three variables, C_xy and C_yz; unique optimum bbb at 0.5."""
    return make_scsp(FUZZY, XYZ, [
        (("x", "y"), _fuzzy({"aa": "0.4", "ab": "0.1", "ba": "0.3", "bb": "0.5"})),
        (("y", "z"), _fuzzy({"aa": "0.4", "ab": "0.3", "ba": "0.1", "bb": "0.5"})),
    ])


def fuzzy_chain_ties() -> Scsp:
    """Four optimal solutions, only two of which are equilibria of the local game."""
    return make_scsp(FUZZY, XYZ, [
        (("x", "y"), _fuzzy({"aa": "0.9", "ab": "0.6", "ba": "0.6", "bb": "0.9"})),
        (("y", "z"), _fuzzy({"aa": "0.1", "ab": "0.2", "ba": "0.1", "bb": "0.2"})),
    ])


def weighted_pair() -> Scsp:
    """One binary cost table; bb is optimal but aa is also an equilibrium."""
    return make_scsp(WEIGHTED, {"x": AB, "y": AB}, [
        (("x", "y"), {"aa": Fraction(3), "ab": Fraction(10), "ba": Fraction(10), "bb": Fraction(1)}),
    ])


def _bits(allowed: set[str]) -> dict[str, bool]:
    return {k: k in allowed for k in ("aa", "ab", "ba", "bb")}


def csp_inconsistent() -> Scsp:
    return make_scsp(CLASSICAL, XYZ, [
        (("x", "y"), _bits({"aa"})),
        (("y", "z"), _bits({"ba"})),
    ])


def csp_consistent() -> Scsp:
    return make_scsp(CLASSICAL, XYZ, [
        (("x", "y"), _bits({"aa"})),
        (("y", "z"), _bits({"aa"})),
    ])


def weighted_pareto() -> Scsp:
    """Unary costs on x and y plus an agreement constraint; the local game has two
    Pareto efficient joint strategies but only aa is optimal."""
    w = {k: Fraction(v) for k, v in {"aa": 0, "ab": 10, "ba": 10, "bb": 0}.items()}
    return make_scsp(WEIGHTED, {"x": AB, "y": AB}, [
        (("x",), {("a",): Fraction(2), ("b",): Fraction(1)}),
        (("y",), {("a",): Fraction(4), ("b",): Fraction(7)}),
        (("x", "y"), w),
    ])


PD_PAYOFFS = {
    ("c", "c"): (3, 3),
    ("c", "n"): (0, 4),
    ("n", "c"): (4, 0),
    ("n", "n"): (1, 1),
}


def prisoners_dilemma() -> GraphicalGame:
    """Players x1, x2 with strategies c (cooperate) and n (not cooperate)."""
    names = ("x1", "x2")
    return make_game(
        UTILITY,
        {n: ("c", "n") for n in names},
        lambda player, joint: Fraction(PD_PAYOFFS[joint][names.index(player)]),
    )


SCSPS = {
    "fuzzy_chain": fuzzy_chain,
    "fuzzy_chain_ties": fuzzy_chain_ties,
    "weighted_pair": weighted_pair,
    "csp_inconsistent": csp_inconsistent,
    "csp_consistent": csp_consistent,
    "weighted_pareto": weighted_pareto,
}

GAMES = {"prisoners_dilemma": prisoners_dilemma}
