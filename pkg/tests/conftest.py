import itertools
import os
import sys
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from softgames import CLASSICAL, FUZZY, INF, WEIGHTED, make_game, make_scsp

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FUZZY_VALUES = st.integers(0, 10).map(lambda k: Fraction(k, 10))
WEIGHTED_VALUES = st.one_of(st.integers(0, 10).map(Fraction), st.just(INF))
FINITE_COSTS = st.integers(0, 10).map(Fraction)
CLASSICAL_VALUES = st.booleans()

VALUES = {"classical": CLASSICAL_VALUES, "fuzzy": FUZZY_VALUES, "weighted": WEIGHTED_VALUES}
CARRIERS = {"classical": CLASSICAL, "fuzzy": FUZZY, "weighted": WEIGHTED}


@st.composite
def scsps(draw, kind=None, values=None, max_vars=3, max_dom=3, binary_only=False):
    kind = kind or draw(st.sampled_from(sorted(CARRIERS)))
    values = VALUES[kind] if values is None else values
    n = draw(st.integers(2, max_vars))
    names = [f"v{k}" for k in range(n)]
    domains = {x: tuple("abc"[: draw(st.integers(1, max_dom))]) for x in names}
    scopes = list(itertools.combinations(names, 2))
    if not binary_only:
        scopes = [(x,) for x in names] + scopes
    chosen = draw(st.lists(st.sampled_from(scopes), min_size=int(binary_only), max_size=4, unique=True))
    constraints = []
    for scope in chosen:
        keys = itertools.product(*(domains[x] for x in scope))
        constraints.append((scope, {k: draw(values) for k in keys}))
    return make_scsp(CARRIERS[kind], domains, constraints)


@st.composite
def games(draw, kind=None, max_players=4, max_strats=3):
    kind = kind or draw(st.sampled_from(["fuzzy", "weighted"]))
    values = FUZZY_VALUES if kind == "fuzzy" else FINITE_COSTS
    n = draw(st.integers(2, max_players))
    names = [f"p{k}" for k in range(n)]
    strategies = {x: tuple("abc"[: draw(st.integers(1, max_strats))]) for x in names}
    neigh = {}
    for x in names:
        others = [o for o in names if o != x]
        neigh[x] = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others))) if others else []
    tables = {}
    for x in names:
        local = [o for o in names if o in neigh[x]] + [x]
        keys = itertools.product(*(strategies[y] for y in local))
        tables[x] = {k: draw(values) for k in keys}
    return make_game(CARRIERS[kind], strategies, tables, neigh)
