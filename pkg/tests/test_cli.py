import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from softgames import io
from softgames.catalog import prisoners_dilemma
from softgames.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", __import__("io").StringIO(stdin))
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve(capsys):
    assert run(capsys, "solve", DATA / "fuzzy_chain.json")[:2] == (0, "bbb : 0.5\n")


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--json", DATA / "weighted_pair.json")
    assert code == 0
    assert json.loads(out) == [{"assignment": {"x": "b", "y": "b"}, "preference": "1"}]


def test_local_then_nash(capsys, monkeypatch):
    _, game, _ = run(capsys, "map", "local", DATA / "fuzzy_chain.json")
    code, out, _ = run(capsys, "nash", "-", stdin=game, monkeypatch=monkeypatch)
    assert code == 0
    assert [line.split(" : ")[0] for line in out.splitlines()] == ["aaa", "bbb"]


def test_dilemma_pipeline(capsys, tmp_path):
    pd = DATA / "prisoners_dilemma.json"
    inv, hard = tmp_path / "inv.json", tmp_path / "hard.json"
    merged = tmp_path / "merged.json"
    assert run(capsys, "map", "inverse", pd, "--f", "complement", "--ceiling", "10", "-o", inv)[0] == 0
    assert run(capsys, "map", "harden", pd, "-o", hard)[0] == 0
    assert run(capsys, "map", "merge", inv, hard, "-o", merged)[0] == 0
    assert run(capsys, "solve", merged)[:2] == (0, "nn : [9, 9]\n")


@pytest.mark.parametrize("verb,expected", [
    ("nash", "nn : [1, 1]\n"),
    ("pareto", "cc : [3, 3]\ncn : [0, 4]\nnc : [4, 0]\n"),
    ("pareto-nash", "nn : [1, 1]\n"),
    ("nash-pareto-intersect", ""),
])
def test_game_verbs(capsys, verb, expected):
    assert run(capsys, verb, DATA / "prisoners_dilemma.json")[:2] == (0, expected)


def test_map_round_trips(capsys):
    for name in ("local", "global"):
        _, out, _ = run(capsys, "map", name, DATA / "fuzzy_chain.json")
        assert io.dumps(io.loads(out)) == out
    _, out, _ = run(capsys, "map", "inverse", DATA / "prisoners_dilemma.json")
    assert io.dumps(io.loads(out)) == out


def test_check_semiring(capsys):
    code, out, _ = run(capsys, "check-semiring", "fuzzy", "--sample", "0.2", "0.5", "0.8")
    assert code == 0
    assert out == "axioms: ok\nstrictly monotonic: no (a=0.5 b=0.8 c=0.2)\n"
    assert run(capsys, "check-semiring", "weighted")[1].endswith("strictly monotonic: yes\n")
    assert "n/a" in run(capsys, "check-semiring", "product:weighted,fuzzy")[1]


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "map", "inverse", DATA / "prisoners_dilemma.json",
                       "--f", "complement", "--ceiling", "2")
    assert code == 1 and "CeilingTooSmall" in err
    code, _, err = run(capsys, "map", "merge", DATA / "weighted_pair.json", DATA / "fuzzy_chain.json")
    assert code == 1 and "VariableMismatch" in err


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "ParseError" in err
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "solve", DATA / "prisoners_dilemma.json")[0] == 2


def test_flags_checked_before_reading(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["map", "local", "/nonexistent.json", "--ceiling", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["map", "merge", "/nonexistent.json"])


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--family", "game-weighted", "--count", "20")
    assert code == 0 and out.startswith("generator: ")
    code, out, _ = run(capsys, "verify", "--family", "fuzzy", "--count", "0")
    assert code == 1 and out == ""


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "softgames", *map(str, argv)],
                          capture_output=True, text=True, env=env, check=False)


def test_output_is_byte_identical_across_workers_and_backends():
    args = ("verify", "--family", "weighted", "--count", "60", "--json")
    base = _cli(*args)
    assert base.stdout
    assert _cli(*args, "--workers", "3").stdout == base.stdout
    env = {**os.environ, "SOFTGAMES_NO_NUMBA": "1"}
    assert _cli(*args, env=env).stdout == base.stdout
    assert _cli("solve", DATA / "fuzzy_chain_ties.json", env=env).stdout == \
        _cli("solve", DATA / "fuzzy_chain_ties.json").stdout


def test_inverse_default_uses_max_payoff_ceiling(capsys):
    _, out, _ = run(capsys, "map", "inverse", DATA / "prisoners_dilemma.json")
    p = io.loads(out)
    assert p.constraints[0].table[("n", "c")] == (0, 0)
    assert io.loads(io.dumps(prisoners_dilemma())) == prisoners_dilemma()
