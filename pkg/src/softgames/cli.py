"""``softgames`` command line.

Exit codes: 0 success, 1 domain error (the error class name is printed),
2 unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io
from .errors import ParseError, SoftGamesError
from .game import GraphicalGame
from .harness import FAMILIES, GeneratorConfig, verify_all
from .mappings import (
    complement,
    default_map,
    game_to_scsp,
    global_map,
    harden,
    identity,
    local_map,
    merge,
)
from .scsp import Scsp
from .semiring import check_axioms, is_strictly_monotonic, parse_rational, semiring_from_json

GAME_VERBS = {
    "nash": GraphicalGame.enumerate_nash,
    "pareto": GraphicalGame.enumerate_pareto,
    "pareto-nash": GraphicalGame.enumerate_pareto_nash,
    "nash-pareto-intersect": GraphicalGame.enumerate_nash_and_global_pareto,
}
MAPPINGS = ("local", "global", "inverse", "harden", "merge")


def _read(path: str):
    try:
        if path == "-":
            return io.loads(sys.stdin.read())
        return io.load(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _expect(obj, kind, path):
    if not isinstance(obj, kind):
        want = "an SCSP" if kind is Scsp else "a game"
        raise ParseError(f"{path} is not {want} file")
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    p = _expect(_read(args.file), Scsp, args.file)
    fmt = p.semiring.format_value
    rows = p.enumerate_optimal()
    if args.json:
        payload = [{"assignment": p.as_dict(s), "preference": fmt(v)} for s, v in rows]
        _emit(json.dumps(payload, indent=2) + "\n", None)
    else:
        _emit("".join(f"{io.format_assignment(s)} : {fmt(v)}\n" for s, v in rows), None)
    return 0


def cmd_game(args) -> int:
    g = _expect(_read(args.file), GraphicalGame, args.file)
    fmt = g.carrier.format_value
    rows = [(s, g.payoff_vector(s)) for s in GAME_VERBS[args.verb](g)]
    if args.json:
        payload = [
            {"joint": dict(zip(g.names, s)), "payoffs": [fmt(v) for v in vec]} for s, vec in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", None)
    else:
        _emit("".join(
            f"{io.format_assignment(s)} : [{', '.join(fmt(v) for v in vec)}]\n" for s, vec in rows
        ), None)
    return 0


def cmd_map(args) -> int:
    name = args.mapping
    if name == "merge":
        a = _expect(_read(args.files[0]), Scsp, args.files[0])
        b = _expect(_read(args.files[1]), Scsp, args.files[1])
        result = merge(a, b)
    elif name in ("local", "global"):
        p = _expect(_read(args.files[0]), Scsp, args.files[0])
        result = local_map(p) if name == "local" else global_map(p)
    else:
        g = _expect(_read(args.files[0]), GraphicalGame, args.files[0])
        if name == "harden":
            result = harden(g)
        else:
            ceiling = parse_rational(args.ceiling) if args.ceiling is not None else None
            if args.f == "identity":
                f = identity(g.carrier)
            elif args.f == "complement":
                f = complement(g.carrier, ceiling if ceiling is not None
                               else max(v for t in g.payoffs.values() for v in t.values()))
            else:
                f = default_map(g, ceiling)
            result = game_to_scsp(g, f)
    _emit(io.dumps(result), args.output)
    return 0


def cmd_verify(args) -> int:
    cfg = GeneratorConfig(
        seed=args.seed,
        family=args.family,
        num_vars=args.num_vars,
        domain_size=args.domain_size,
        density=Fraction(args.density),
    )
    report = verify_all(cfg, args.count, sweep_shapes=not args.no_sweep, workers=args.workers)
    if args.json:
        _emit(json.dumps(report.to_json(), indent=2) + "\n", None)
    else:
        _emit(report.to_text(), None)
    return 0 if report.ok else 1


def _semiring_arg(text: str):
    if text.startswith("product:"):
        return semiring_from_json({"product": text.split(":", 1)[1].split(",")})
    return semiring_from_json(text)


def cmd_check_semiring(args) -> int:
    s = _semiring_arg(args.kind)
    sample = [s.parse_value(x) for x in args.sample] if args.sample else None
    violations = check_axioms(s, sample)
    fmt = s.format_value
    lines = []
    for v in violations:
        lines.append(f"violated {v.axiom}: {' '.join(fmt(w) for w in v.witness)}")
    if not violations:
        lines.append("axioms: ok")
    if s.linear:
        verdict = is_strictly_monotonic(s, sample)
        if verdict.strict:
            lines.append("strictly monotonic: yes")
        else:
            a, b, c = verdict.counterexample
            lines.append(f"strictly monotonic: no (a={fmt(a)} b={fmt(b)} c={fmt(c)})")
    else:
        lines.append("strictly monotonic: n/a (partial order)")
    _emit("\n".join(lines) + "\n", None)
    return 1 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="softgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", help="optimal solutions of an SCSP file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    for verb in GAME_VERBS:
        p = sub.add_parser(verb, help=f"{verb} joint strategies of a game file")
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=cmd_game)

    p = sub.add_parser("map", help="transform a problem: " + ", ".join(MAPPINGS))
    p.add_argument("mapping", choices=MAPPINGS)
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--f", choices=("identity", "complement"))
    p.add_argument("--ceiling")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("verify", help="run the property suite on random instances")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--num-vars", type=int, default=4)
    p.add_argument("--domain-size", type=int, default=3)
    p.add_argument("--density", default="1/2")
    p.add_argument("--no-sweep", action="store_true", help="use the given size for every instance")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-semiring", help="axiom and strict monotonicity checks")
    p.add_argument("kind", help="classical | fuzzy | weighted | product:k1,k2,...")
    p.add_argument("--sample", nargs="*")
    p.set_defaults(func=cmd_check_semiring)
    return parser


def _check_flags(parser, args) -> None:
    if args.verb != "map":
        return
    want = 2 if args.mapping == "merge" else 1
    if len(args.files) != want:
        parser.error(f"map {args.mapping} takes {want} input file(s)")
    if args.mapping != "inverse" and (args.f or args.ceiling is not None):
        parser.error("--f and --ceiling only apply to map inverse")
    if args.f == "identity" and args.ceiling is not None:
        parser.error("--ceiling needs --f complement")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_flags(parser, args)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return 2
    except SoftGamesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
