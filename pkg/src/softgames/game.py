"""Graphical games with payoffs in a linearly ordered carrier.

Player ``i``'s payoff table is keyed by its *local tuple*: the strategies of
its neighbours in global player order, followed by its own strategy last.
Joint strategies are tuples in player order, like SCSP assignments.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterator, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidProblem, NotLinearlyOrdered, UnknownPlayer
from .semiring import Semiring, rank_matrix


@dataclass(frozen=True)
class Player:
    name: str
    strategies: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if not self.strategies:
            raise InvalidProblem(f"player {self.name!r} has no strategies")
        if len(set(self.strategies)) != len(self.strategies):
            raise InvalidProblem(f"player {self.name!r} has repeated strategies")


class GraphicalGame:
    def __init__(
        self,
        carrier: Semiring,
        players: Sequence[Player],
        neigh: Mapping[str, Sequence[str]],
        payoffs: Mapping[str, Mapping[tuple[str, ...], Any]],
    ):
        if not carrier.linear:
            raise NotLinearlyOrdered(f"payoff carrier {carrier!r} is not linearly ordered")
        self.carrier = carrier
        self.players = tuple(players)
        if len(self.players) < 2:
            raise InvalidProblem("a game needs at least two players")
        self.names = tuple(p.name for p in self.players)
        if len(set(self.names)) != len(self.names):
            raise InvalidProblem("player names must be unique")
        self.index = {n: k for k, n in enumerate(self.names)}
        self.strategies = {p.name: p.strategies for p in self.players}
        self.shape = tuple(len(p.strategies) for p in self.players)

        nb = {}
        for name in self.names:
            others = set(neigh.get(name, ()))
            for o in others:
                if o not in self.index:
                    raise UnknownPlayer(f"neighbour {o!r} of {name!r} is not a player")
            if name in others:
                raise InvalidProblem(f"player {name!r} cannot neighbour itself")
            nb[name] = tuple(sorted(others, key=self.index.__getitem__))
        for name in neigh:
            if name not in self.index:
                raise UnknownPlayer(f"neighbourhood given for unknown player {name!r}")
        self.neigh = nb

        tables = {}
        for name in self.names:
            if name not in payoffs:
                raise InvalidProblem(f"no payoff table for {name!r}")
            table = {tuple(k): v for k, v in payoffs[name].items()}
            expected = set(itertools.product(*(self.strategies[n] for n in self.local_scope(name))))
            if set(table) != expected:
                raise InvalidProblem(f"payoff table of {name!r} is not total over {self.local_scope(name)}")
            for v in table.values():
                carrier.check(v)
            tables[name] = table
        for name in payoffs:
            if name not in self.index:
                raise UnknownPlayer(f"payoff table for unknown player {name!r}")
        self.payoffs = tables

    def __eq__(self, other):
        return (
            isinstance(other, GraphicalGame)
            and self.carrier == other.carrier
            and self.players == other.players
            and self.neigh == other.neigh
            and self.payoffs == other.payoffs
        )

    __hash__ = None

    def __repr__(self):
        return f"GraphicalGame({list(self.names)}, carrier={self.carrier.kind})"

    def local_scope(self, name: str) -> tuple[str, ...]:
        return self.neigh[name] + (name,)

    @cached_property
    def _local_positions(self) -> list[tuple[int, ...]]:
        return [tuple(self.index[n] for n in self.local_scope(name)) for name in self.names]

    def as_tuple(self, s: Mapping[str, str] | Sequence[str]) -> tuple[str, ...]:
        if isinstance(s, Mapping):
            missing = [n for n in self.names if n not in s]
            if missing:
                raise UnknownPlayer(f"joint strategy misses {missing}")
            s = tuple(s[n] for n in self.names)
        s = tuple(s)
        if len(s) != len(self.players):
            raise InvalidProblem(f"joint strategy {s} has the wrong length")
        for p, x in zip(self.players, s):
            if x not in p.strategies:
                raise InvalidProblem(f"{x!r} is not a strategy of {p.name!r}")
        return s

    def joint_strategies(self) -> Iterator[tuple[str, ...]]:
        return itertools.product(*(p.strategies for p in self.players))

    # --- payoffs -------------------------------------------------------------

    def payoff(self, player: str, s) -> Any:
        """Canonical extension: look up ``player``'s table on its local projection."""
        if player not in self.index:
            raise UnknownPlayer(player)
        s = self.as_tuple(s)
        k = self.index[player]
        return self.payoffs[player][tuple(s[p] for p in self._local_positions[k])]

    def payoff_vector(self, s) -> tuple:
        s = self.as_tuple(s)
        return tuple(
            self.payoffs[name][tuple(s[p] for p in pos)]
            for name, pos in zip(self.names, self._local_positions)
        )

    @cached_property
    def all_payoffs(self) -> list[tuple]:
        """Payoff vector of every joint strategy, in canonical order."""
        rows = []
        tables = [self.payoffs[n] for n in self.names]
        for s in self.joint_strategies():
            rows.append(tuple(t[tuple(s[p] for p in pos)] for t, pos in zip(tables, self._local_positions)))
        return rows

    @cached_property
    def payoff_ranks(self) -> np.ndarray:
        flat = [v for row in self.all_payoffs for v in row]
        return rank_matrix(self.carrier, flat).reshape(len(self.all_payoffs), len(self.players))

    # --- solution concepts ---------------------------------------------------

    def is_nash(self, s) -> bool:
        s = self.as_tuple(s)
        for k, name in enumerate(self.names):
            pos = self._local_positions[k]
            table = self.payoffs[name]
            local = [s[p] for p in pos]
            here = table[tuple(local)]
            for alt in self.strategies[name]:
                local[-1] = alt
                if self.carrier.lt(here, table[tuple(local)]):
                    return False
        return True

    def _nash_mask(self) -> np.ndarray:
        return _kernels.nash_mask(self.payoff_ranks, self.shape)

    def _select(self, mask) -> list[tuple[str, ...]]:
        return [s for k, s in enumerate(self.joint_strategies()) if mask[k]]

    def enumerate_nash(self) -> list[tuple[str, ...]]:
        return self._select(self._nash_mask())

    def pareto_dominates(self, better, worse) -> bool:
        """True iff ``better``'s payoff vector strictly Pareto-dominates ``worse``'s."""
        a = self.payoff_vector(better)
        b = self.payoff_vector(worse)
        leq = self.carrier.leq
        return all(leq(y, x) for x, y in zip(a, b)) and a != b

    def enumerate_pareto(self) -> list[tuple[str, ...]]:
        return self._select(_kernels.maximal_mask(self.payoff_ranks))

    def enumerate_pareto_nash(self) -> list[tuple[str, ...]]:
        """Nash equilibria not strictly dominated by another Nash equilibrium."""
        nash = np.flatnonzero(self._nash_mask())
        mask = np.zeros(len(self.all_payoffs), dtype=bool)
        if nash.size:
            mask[nash[_kernels.maximal_mask(self.payoff_ranks[nash])]] = True
        return self._select(mask)

    def enumerate_nash_and_global_pareto(self) -> list[tuple[str, ...]]:
        mask = self._nash_mask() & _kernels.maximal_mask(self.payoff_ranks)
        return self._select(mask)


def make_game(
    carrier: Semiring,
    strategies: Mapping[str, Sequence[str]],
    payoff: Callable[[str, tuple[str, ...]], Any] | Mapping[str, Mapping],
    neigh: Mapping[str, Sequence[str]] | None = None,
) -> GraphicalGame:
    """Build a game from a strategy map.

    ``neigh=None`` makes every pair of players neighbours (a strategic game).
    ``payoff`` is either per-player local tables, or a callable
    ``payoff(player, joint)`` over full joint strategies in player order; the
    callable is sampled on the canonical extension, so it must ignore
    non-neighbours.
    """
    players = [Player(n, tuple(s)) for n, s in strategies.items()]
    names = [p.name for p in players]
    if neigh is None:
        neigh = {n: [o for o in names if o != n] for n in names}
    if not callable(payoff):
        return GraphicalGame(carrier, players, neigh, payoff)
    index = {n: k for k, n in enumerate(names)}
    tables = {}
    for n in names:
        local = sorted(neigh.get(n, ()), key=index.__getitem__) + [n]
        table = {}
        for joint in itertools.product(*(strategies[x] for x in names)):
            key = tuple(joint[index[x]] for x in local)
            table.setdefault(key, payoff(n, joint))
        tables[n] = table
    return GraphicalGame(carrier, players, neigh, tables)
