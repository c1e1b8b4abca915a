"""JSON file formats for SCSPs and games, and the one-line result grammar.

Table keys are comma-joined labels in scope order (``"a,b"``); values are
the carrier's textual form (``"0.4"``, ``"2/5"``, ``"inf"``, ``"true"``,
``"[7, 0]"``). Serialization is canonical: tables are written in
enumeration order, so ``dumps(loads(text))`` is a fixed point.
"""
from __future__ import annotations

import itertools
import json
from decimal import Decimal
from typing import Any, Sequence

from .errors import InvalidProblem, KindMismatch, ParseError, UnknownPlayer, UnknownVariable
from .game import GraphicalGame, Player
from .scsp import Scsp, SoftConstraint, Variable
from .semiring import Semiring, semiring_from_json

_STRUCTURAL = (InvalidProblem, KindMismatch, UnknownVariable, UnknownPlayer)


def _key(labels: Sequence[str]) -> str:
    return ",".join(labels)


def _split_key(key: str, arity: int) -> tuple[str, ...]:
    if arity == 0:
        if key != "":
            raise ParseError(f"nullary table key must be empty, got {key!r}")
        return ()
    parts = tuple(p.strip() for p in key.split(","))
    if len(parts) != arity:
        raise ParseError(f"table key {key!r} should have {arity} labels")
    return parts


def _labels(raw: Any, what: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ParseError(f"{what} must be a list of strings")
    for x in raw:
        if "," in x or x != x.strip() or not x:
            raise ParseError(f"label {x!r} in {what} must be non-empty without commas or padding")
    return tuple(raw)


def _parse_table(raw: Any, scope: Sequence[str], carrier: Semiring) -> dict:
    if not isinstance(raw, dict):
        raise ParseError(f"table over {list(scope)} must be an object")
    table = {}
    for k, v in raw.items():
        key = _split_key(k, len(scope))
        if key in table:
            raise ParseError(f"duplicate table key {k!r}")
        table[key] = carrier.parse_value(v)
    return table


def _load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _field(obj: Any, name: str, kind: type) -> Any:
    if not isinstance(obj, dict) or name not in obj:
        raise ParseError(f"missing field {name!r}")
    value = obj[name]
    if not isinstance(value, kind):
        raise ParseError(f"field {name!r} has the wrong type")
    return value


# --- SCSP --------------------------------------------------------------------


def scsp_from_obj(obj: Any) -> Scsp:
    semiring = semiring_from_json(_field(obj, "semiring", (dict, str)))
    variables = []
    for v in _field(obj, "variables", list):
        variables.append((_field(v, "name", str), _labels(_field(v, "domain", list), "domain")))
    constraints = []
    for c in _field(obj, "constraints", list):
        scope = _labels(_field(c, "scope", list), "scope")
        constraints.append((scope, _parse_table(_field(c, "table", dict), scope, semiring)))
    try:
        return Scsp(
            semiring,
            [Variable(n, d) for n, d in variables],
            [SoftConstraint(s, t) for s, t in constraints],
        )
    except _STRUCTURAL as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from exc


def scsp_to_obj(p: Scsp) -> dict:
    fmt = p.semiring.format_value
    constraints = []
    for c in p.constraints:
        keys = itertools.product(*(p.domains[n] for n in c.scope))
        constraints.append({
            "scope": list(c.scope),
            "table": {_key(k): fmt(c.table[k]) for k in keys},
        })
    return {
        "semiring": {"kind": p.semiring.to_json()},
        "variables": [{"name": v.name, "domain": list(v.domain)} for v in p.variables],
        "constraints": constraints,
    }


# --- games -------------------------------------------------------------------


def game_from_obj(obj: Any) -> GraphicalGame:
    carrier = semiring_from_json(_field(obj, "carrier", (dict, str)), allow_utility=True)
    if not carrier.linear:
        raise ParseError("game carrier must be linearly ordered")
    players = []
    for p in _field(obj, "players", list):
        players.append((_field(p, "name", str), _labels(_field(p, "strategies", list), "strategies")))
    names = [n for n, _ in players]
    raw_neigh = obj.get("neigh")
    if raw_neigh is None:
        neigh = {n: [o for o in names if o != n] for n in names}
    elif isinstance(raw_neigh, dict):
        neigh = {k: list(_labels(v, f"neigh[{k}]")) for k, v in raw_neigh.items()}
    else:
        raise ParseError("neigh must be an object")
    index = {n: k for k, n in enumerate(names)}
    raw_payoffs = _field(obj, "payoffs", dict)
    tables = {}
    for name, raw in raw_payoffs.items():
        local = sorted(neigh.get(name, []), key=lambda x: index.get(x, -1)) + [name]
        tables[name] = _parse_table(raw, local, carrier)
    try:
        return GraphicalGame(carrier, [Player(n, s) for n, s in players], neigh, tables)
    except _STRUCTURAL as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from exc


def game_to_obj(g: GraphicalGame) -> dict:
    fmt = g.carrier.format_value
    payoffs = {}
    for name in g.names:
        keys = itertools.product(*(g.strategies[n] for n in g.local_scope(name)))
        payoffs[name] = {_key(k): fmt(g.payoffs[name][k]) for k in keys}
    return {
        "carrier": {"kind": g.carrier.to_json()},
        "players": [{"name": p.name, "strategies": list(p.strategies)} for p in g.players],
        "neigh": {n: list(g.neigh[n]) for n in g.names},
        "payoffs": payoffs,
    }


# --- entry points ------------------------------------------------------------


def loads(text: str) -> Scsp | GraphicalGame:
    """Parse either file kind; SCSPs carry ``semiring``, games ``carrier``."""
    obj = _load_json(text)
    if isinstance(obj, dict) and "semiring" in obj:
        return scsp_from_obj(obj)
    if isinstance(obj, dict) and "carrier" in obj:
        return game_from_obj(obj)
    raise ParseError("expected an SCSP (with 'semiring') or a game (with 'carrier')")


def dumps(problem: Scsp | GraphicalGame) -> str:
    obj = scsp_to_obj(problem) if isinstance(problem, Scsp) else game_to_obj(problem)
    return json.dumps(obj, indent=2) + "\n"


def load(path: str) -> Scsp | GraphicalGame:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def format_assignment(labels: Sequence[str]) -> str:
    """``bbb`` when every label is one character, ``c1,n2`` otherwise."""
    if all(len(x) == 1 for x in labels):
        return "".join(labels)
    return ",".join(labels)
