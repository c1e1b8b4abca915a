"""Transformations between SCSPs and graphical games.

* :func:`local_map`  -- SCSP -> game; a player is paid by the constraints it occurs in
* :func:`global_map` -- SCSP -> game; every player is paid the full preference
* :func:`game_to_scsp` -- game -> SCSP over a product semiring, one coordinate per player
* :func:`harden` -- game -> classical CSP whose solutions are the Nash equilibria
* :func:`merge` -- union of two SCSPs, lifting classical constraints into a product
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from . import _kernels
from .errors import (
    CeilingTooSmall,
    DomainMismatch,
    KindMismatch,
    NotLinearlyOrdered,
    NotOrderPreserving,
    TooFewVariables,
    VariableMismatch,
)
from .game import GraphicalGame, Player
from .scsp import Scsp, SoftConstraint, Variable
from .semiring import (
    CLASSICAL,
    INF,
    WEIGHTED,
    Product,
    Semiring,
    format_rational,
    rank_matrix,
)


def _check_mappable(p: Scsp) -> None:
    if not p.semiring.linear:
        raise NotLinearlyOrdered(f"{p.semiring!r} is not linearly ordered")
    if len(p.variables) < 2:
        raise TooFewVariables("a game needs at least two players")


def _players(p: Scsp) -> list[Player]:
    return [Player(v.name, v.domain) for v in p.variables]


def local_map(p: Scsp) -> GraphicalGame:
    """Player i's payoff combines exactly the constraints involving x_i."""
    _check_mappable(p)
    index = {n: k for k, n in enumerate(p.names)}
    neigh: dict[str, set[str]] = {n: set() for n in p.names}
    for c in p.constraints:
        for a in c.scope:
            neigh[a].update(b for b in c.scope if b != a)

    tables = {}
    for name in p.names:
        local = sorted(neigh[name], key=index.__getitem__) + [name]
        where = {n: k for k, n in enumerate(local)}
        incident = [
            (c, tuple(where[n] for n in c.scope)) for c in p.constraints if name in c.scope
        ]
        table = {}
        for t in itertools.product(*(p.domains[n] for n in local)):
            table[t] = p.semiring.combine(c.table[tuple(t[k] for k in pos)] for c, pos in incident)
        tables[name] = table
    return GraphicalGame(p.semiring, _players(p), neigh, tables)


def global_map(p: Scsp) -> GraphicalGame:
    """Everyone neighbours everyone and is paid the solution's preference."""
    _check_mappable(p)
    names = p.names
    neigh = {n: [o for o in names if o != n] for n in names}
    prefs = dict(zip(p.assignments(), p.all_preferences))
    tables = {}
    for k, name in enumerate(names):
        order = [j for j in range(len(names)) if j != k] + [k]
        tables[name] = {tuple(s[j] for j in order): v for s, v in prefs.items()}
    return GraphicalGame(p.semiring, _players(p), neigh, tables)


# --- order preserving maps ---------------------------------------------------


@dataclass(frozen=True)
class OrderPreservingMap:
    """Payoff relabelling ``f`` from a game carrier into a linear c-semiring.

    ``rule`` is ``"identity"`` or ``"complement"`` (``f(r) = ceiling - r``,
    which turns costs into utilities and back).
    """

    source: Semiring
    target: Semiring
    rule: str = "identity"
    ceiling: Fraction | None = None

    def __post_init__(self):
        if self.rule not in ("identity", "complement"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if not self.target.linear:
            raise NotLinearlyOrdered(f"target {self.target!r} is not linearly ordered")
        if self.rule == "complement" and self.ceiling is None:
            raise ValueError("complement needs a ceiling")

    def __call__(self, v):
        if self.rule == "identity":
            return self.target.check(v)
        if v is INF:
            raise NotOrderPreserving("an infinite payoff has no finite complement")
        return self.target.check(Fraction(self.ceiling) - v)

    def validate(self, values) -> None:
        """Raise unless ``self`` is strictly order preserving on ``values``."""
        distinct = sorted(set(values), key=self.source.sort_key)
        if self.rule == "complement":
            finite = [v for v in distinct if v is not INF]
            if finite and Fraction(self.ceiling) < max(finite):
                raise CeilingTooSmall(
                    f"ceiling {format_rational(self.ceiling)} is below payoff "
                    f"{format_rational(max(finite))}"
                )
        images = [self(v) for v in distinct]
        for (r0, r1), (f0, f1) in zip(itertools.pairwise(distinct), itertools.pairwise(images)):
            if not self.target.lt(f0, f1):
                raise NotOrderPreserving(
                    f"{self.source.format_value(r0)} < {self.source.format_value(r1)} but "
                    f"f gives {self.target.format_value(f0)}, {self.target.format_value(f1)}"
                )


def identity(source: Semiring, target: Semiring | None = None) -> OrderPreservingMap:
    return OrderPreservingMap(source, target or source, "identity")


def complement(source: Semiring, ceiling, target: Semiring = WEIGHTED) -> OrderPreservingMap:
    return OrderPreservingMap(source, target, "complement", Fraction(ceiling))


def occurring_payoffs(g: GraphicalGame) -> list:
    return [v for n in g.names for v in g.payoffs[n].values()]


def default_map(g: GraphicalGame, ceiling=None) -> OrderPreservingMap:
    """Identity into the carrier itself when it is a c-semiring; for the
    utility scale, complement into weighted costs w.r.t. the largest payoff."""
    if g.carrier.is_semiring:
        return identity(g.carrier)
    if ceiling is None:
        ceiling = max(occurring_payoffs(g))
    return complement(g.carrier, ceiling)


def map_payoffs(g: GraphicalGame, f: OrderPreservingMap) -> GraphicalGame:
    """The same game with every payoff relabelled by ``f``."""
    f.validate(occurring_payoffs(g))
    tables = {n: {k: f(v) for k, v in t.items()} for n, t in g.payoffs.items()}
    return GraphicalGame(f.target, g.players, g.neigh, tables)


def _maps_for(g: GraphicalGame, f) -> list[OrderPreservingMap]:
    if f is None:
        f = default_map(g)
    if isinstance(f, OrderPreservingMap):
        maps = [f] * len(g.names)
    elif isinstance(f, Mapping):
        maps = [f[n] for n in g.names]
    else:
        maps = list(f)
    if len(maps) != len(g.names):
        raise ValueError("need one order preserving map per player")
    values = occurring_payoffs(g)
    for m in maps:
        if m.source != g.carrier:
            raise KindMismatch(f"map source {m.source.kind} differs from game carrier {g.carrier.kind}")
        if not m.target.is_semiring:
            raise KindMismatch(f"map target {m.target.kind} is not a c-semiring")
        m.validate(values)
    return maps


def _global_scope(g: GraphicalGame, name: str) -> tuple[str, ...]:
    return tuple(sorted(g.local_scope(name), key=g.index.__getitem__))


def game_to_scsp(g: GraphicalGame, f=None) -> Scsp:
    """One variable per player, one constraint per player over a product
    semiring; constraint i is the product one except coordinate i = f_i(p_i)."""
    maps = _maps_for(g, f)
    product = Product([m.target for m in maps])
    constraints = []
    for k, name in enumerate(g.names):
        scope = _global_scope(g, name)
        local = g.local_scope(name)
        order = [scope.index(n) for n in local]
        table = {}
        for t in itertools.product(*(g.strategies[n] for n in scope)):
            value = list(product.one)
            value[k] = maps[k](g.payoffs[name][tuple(t[j] for j in order)])
            table[t] = tuple(value)
        constraints.append(SoftConstraint(scope, table))
    variables = [Variable(p.name, p.strategies) for p in g.players]
    return Scsp(product, variables, constraints)


def harden(g: GraphicalGame) -> Scsp:
    """Per player, allow exactly the local tuples where its own strategy
    is a best response to its neighbours'."""
    constraints = []
    for name in g.names:
        local = g.local_scope(name)
        shape = [len(g.strategies[n]) for n in local]
        keys = list(itertools.product(*(g.strategies[n] for n in local)))
        ranks = rank_matrix(g.carrier, [g.payoffs[name][t] for t in keys])[:, 0]
        allowed = _kernels.best_response_mask(ranks, shape, len(local) - 1)
        scope = _global_scope(g, name)
        order = [local.index(n) for n in scope]
        table = {tuple(t[j] for j in order): bool(ok) for t, ok in zip(keys, allowed)}
        constraints.append(SoftConstraint(scope, table))
    variables = [Variable(p.name, p.strategies) for p in g.players]
    return Scsp(CLASSICAL, variables, constraints)


def _lift(value: bool, target: Semiring) -> Any:
    return target.one if value else target.zero


def merge(a: Scsp, b: Scsp) -> Scsp:
    """All constraints of ``a`` plus those of ``b``; classical constraints of
    ``b`` are lifted into ``a``'s semiring (1 -> one, 0 -> zero)."""
    if a.names != b.names:
        raise VariableMismatch(f"variables differ: {a.names} vs {b.names}")
    for va, vb in zip(a.variables, b.variables):
        if va.domain != vb.domain:
            raise DomainMismatch(f"domain of {va.name!r} differs: {va.domain} vs {vb.domain}")
    if b.semiring == a.semiring:
        lifted = list(b.constraints)
    elif b.semiring.kind == "classical":
        lifted = [
            SoftConstraint(c.scope, {k: _lift(v, a.semiring) for k, v in c.table.items()})
            for c in b.constraints
        ]
    else:
        raise KindMismatch(f"cannot merge {b.semiring.kind} constraints into {a.semiring!r}")
    return Scsp(a.semiring, a.variables, list(a.constraints) + lifted)


__all__ = [
    "OrderPreservingMap",
    "complement",
    "default_map",
    "game_to_scsp",
    "global_map",
    "harden",
    "identity",
    "local_map",
    "map_payoffs",
    "merge",
    "occurring_payoffs",
]
