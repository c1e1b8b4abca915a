"""Soft constraint problems, graphical games, and the mappings between them."""
from .errors import *  # noqa: F401,F403
from .game import GraphicalGame, Player, make_game
from .mappings import (
    OrderPreservingMap,
    complement,
    game_to_scsp,
    global_map,
    harden,
    identity,
    local_map,
    map_payoffs,
    merge,
)
from .scsp import Scsp, SoftConstraint, Variable, make_scsp, project
from .semiring import (
    CLASSICAL,
    FUZZY,
    INF,
    UTILITY,
    WEIGHTED,
    Product,
    Semiring,
    check_axioms,
    is_strictly_monotonic,
)

__version__ = "0.1.0"
