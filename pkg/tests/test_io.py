import json
from pathlib import Path

import pytest
from hypothesis import given

from conftest import games, scsps
from softgames import io
from softgames.catalog import GAMES, SCSPS
from softgames.errors import ParseError

DATA = Path(__file__).resolve().parent.parent / "data"
CATALOG = {**SCSPS, **GAMES}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_data_files_match_the_catalog(name):
    text = (DATA / f"{name}.json").read_text()
    assert io.loads(text) == CATALOG[name]()
    assert io.dumps(io.loads(text)) == text


@given(scsps())
def test_scsp_round_trip(p):
    assert io.loads(io.dumps(p)) == p


@given(games())
def test_game_round_trip(g):
    assert io.loads(io.dumps(g)) == g


def test_decimal_values_are_exact():
    text = json.dumps({
        "semiring": "fuzzy",
        "variables": [{"name": "x", "domain": ["a"]}],
        "constraints": [{"scope": ["x"], "table": {"a": 0.1}}],
    })
    p = io.loads(text)
    assert p.constraints[0].table[("a",)] * 10 == 1


def _scsp(**over):
    obj = {
        "semiring": "weighted",
        "variables": [{"name": "x", "domain": ["a", "b"]}],
        "constraints": [{"scope": ["x"], "table": {"a": "1", "b": "inf"}}],
    }
    obj.update(over)
    return json.dumps(obj)


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    json.dumps({"semiring": "weighted"}),
    _scsp(semiring="tropical"),
    _scsp(constraints=[{"scope": ["x"], "table": {"a": "1"}}]),
    _scsp(constraints=[{"scope": ["y"], "table": {"a": "1", "b": "1"}}]),
    _scsp(constraints=[{"scope": ["x"], "table": {"a": "-1", "b": "1"}}]),
    _scsp(constraints=[{"scope": ["x"], "table": {"a,b": "1", "b": "1"}}]),
    _scsp(variables=[{"name": "x", "domain": ["a,b"]}]),
    json.dumps({"carrier": "utility", "players": [{"name": "p", "strategies": ["a"]}],
                "payoffs": {"p": {"a": "1"}}}),
])
def test_malformed_inputs_raise_parse_error(text):
    with pytest.raises(ParseError):
        io.loads(text)


def test_format_assignment():
    assert io.format_assignment(("b", "b", "b")) == "bbb"
    assert io.format_assignment(("c1", "n2")) == "c1,n2"
