"""Random small instances and the inclusion/coincidence checks run on them.

Generator algorithm (``GENERATOR_ID``), fixed so reports are comparable:

* instance ``k`` of a run with base seed ``s`` uses
  ``numpy.random.Generator(PCG64(s + k mod 2**64))``;
* every Bernoulli draw with rational probability ``p/q`` is
  ``integers(0, q) < p``;
* SCSPs: one draw per variable pair ``(i < j)`` in order for a binary
  constraint (probability ``density``), then one per variable for a unary
  constraint (probability 1/2, forced when no binary constraint covers the
  variable, though the draw is still made); binary constraints come first, in pair
  order, then unary ones. Table entries are drawn in constraint order, each
  table in canonical tuple order;
* games: one draw per player pair for an edge (probability ``density``),
  then every player's payoff table in player order, entries in canonical
  local order (neighbours, then the owner);
* values: fuzzy ``integers(0, 11) / 10``; weighted ``integers(0, 12)``
  with 11 standing for infinity; classical ``integers(0, 4) != 0``;
* classical instances whose entries all agree get one entry, chosen by
  ``integers(0, n_entries)``, flipped.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable

import numpy as np

from . import io
from .errors import InvalidConfig
from .game import GraphicalGame, Player
from .mappings import game_to_scsp, global_map, harden, local_map, merge
from .scsp import Scsp, SoftConstraint, Variable
from .semiring import CLASSICAL, FUZZY, INF, WEIGHTED, Semiring

GENERATOR_ID = "softgames-gen/1 numpy-PCG64(seed+index)"

SCSP_FAMILIES = ("classical", "fuzzy", "weighted")
GAME_FAMILIES = ("game-fuzzy", "game-weighted")
FAMILIES = SCSP_FAMILIES + GAME_FAMILIES

_CARRIER = {
    "classical": CLASSICAL,
    "fuzzy": FUZZY,
    "weighted": WEIGHTED,
    "game-fuzzy": FUZZY,
    "game-weighted": WEIGHTED,
}


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    family: str
    num_vars: int = 3
    domain_size: int = 2
    density: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.density))
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.family not in FAMILIES:
            raise InvalidConfig(f"unknown family {self.family!r}; pick one of {FAMILIES}")
        if not 2 <= self.num_vars <= 4:
            raise InvalidConfig("num_vars must be in 2..4")
        if not 2 <= self.domain_size <= 3:
            raise InvalidConfig("domain_size must be in 2..3")
        if not 0 < self.density <= 1:
            raise InvalidConfig("density must be in (0, 1]")

    @property
    def carrier(self) -> Semiring:
        return _CARRIER[self.family]

    def to_json(self) -> dict:
        return {
            "seed": int(self.seed),
            "family": self.family,
            "num_vars": self.num_vars,
            "domain_size": self.domain_size,
            "density": str(self.density),
        }


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) % 2**64))


def _bernoulli(rng, p: Fraction) -> bool:
    return int(rng.integers(0, p.denominator)) < p.numerator


def _draw(rng, carrier: Semiring):
    if carrier is FUZZY:
        return Fraction(int(rng.integers(0, 11)), 10)
    if carrier is WEIGHTED:
        k = int(rng.integers(0, 12))
        return INF if k == 11 else Fraction(k)
    return int(rng.integers(0, 4)) != 0


def _names(n: int) -> list[str]:
    return ["x", "y", "z", "w"][:n]


def _labels(d: int) -> tuple[str, ...]:
    return ("a", "b", "c")[:d]


def generate_scsp(cfg: GeneratorConfig) -> Scsp:
    if cfg.family not in SCSP_FAMILIES:
        raise InvalidConfig(f"{cfg.family!r} is a game family")
    rng = _rng(cfg.seed)
    names = _names(cfg.num_vars)
    dom = _labels(cfg.domain_size)
    scopes = [pair for pair in combinations(names, 2) if _bernoulli(rng, cfg.density)]
    covered = {n for pair in scopes for n in pair}
    # an uncovered variable always gets a unary constraint
    scopes += [(n,) for n in names if _bernoulli(rng, Fraction(1, 2)) or n not in covered]
    tables = []
    for scope in scopes:
        tables.append({t: _draw(rng, cfg.carrier) for t in product(dom, repeat=len(scope))})
    if cfg.carrier is CLASSICAL:
        _ensure_both_bits(rng, tables)
    return Scsp(
        cfg.carrier,
        [Variable(n, dom) for n in names],
        [SoftConstraint(s, t) for s, t in zip(scopes, tables)],
    )


def _ensure_both_bits(rng, tables: list[dict]) -> None:
    cells = [(t, k) for t in tables for k in t]
    if len(cells) >= 2 and len({t[k] for t, k in cells}) == 1:
        t, k = cells[int(rng.integers(0, len(cells)))]
        t[k] = not t[k]


def generate_game(cfg: GeneratorConfig) -> GraphicalGame:
    if cfg.family not in GAME_FAMILIES:
        raise InvalidConfig(f"{cfg.family!r} is an SCSP family")
    rng = _rng(cfg.seed)
    names = _names(cfg.num_vars)
    dom = _labels(cfg.domain_size)
    neigh: dict[str, list[str]] = {n: [] for n in names}
    for a, b in combinations(names, 2):
        if _bernoulli(rng, cfg.density):
            neigh[a].append(b)
            neigh[b].append(a)
    tables = {}
    for n in names:
        local = neigh[n] + [n]
        tables[n] = {t: _draw(rng, cfg.carrier) for t in product(dom, repeat=len(local))}
    return GraphicalGame(cfg.carrier, [Player(n, dom) for n in names], neigh, tables)


def generate(cfg: GeneratorConfig) -> Scsp | GraphicalGame:
    return generate_scsp(cfg) if cfg.family in SCSP_FAMILIES else generate_game(cfg)


# --- properties --------------------------------------------------------------


@dataclass
class Outcome:
    ok: bool
    left: list  # the set that should be included in / equal to ``right``
    right: list
    witness: tuple | None = None


def _subset(left, right) -> Outcome:
    right_set = set(right)
    missing = [s for s in left if s not in right_set]
    return Outcome(not missing, list(left), list(right), missing[0] if missing else None)


def _equal(left, right) -> Outcome:
    a, b = set(left), set(right)
    diff = sorted(a ^ b)
    return Outcome(not diff, list(left), list(right), diff[0] if diff else None)


def _optimal(p: Scsp) -> list:
    return [s for s, _ in p.enumerate_optimal()]


def _optimum_is_zero(p: Scsp) -> bool:
    return any(v == p.semiring.zero for _, v in p.enumerate_optimal())


def _as_game(x) -> GraphicalGame:
    return x if isinstance(x, GraphicalGame) else local_map(x)


def prop_optimal_in_nash_local(p: Scsp):
    # strict monotonicity of weighted x fails only at the absorbing infinity
    if _optimum_is_zero(p):
        return None
    return _subset(_optimal(p), local_map(p).enumerate_nash())


def prop_optimal_in_pareto_local(p: Scsp):
    if _optimum_is_zero(p):
        return None
    return _subset(_optimal(p), local_map(p).enumerate_pareto())


def prop_optimal_in_pareto_local_uniform_arity(p: Scsp):
    # with one arity k, the payoffs sum to k times the cost, so domination is strict
    if _optimum_is_zero(p) or len({len(c.scope) for c in p.constraints}) > 1:
        return None
    return _subset(_optimal(p), local_map(p).enumerate_pareto())


def prop_solutions_in_nash_local(p: Scsp):
    if not p.is_consistent():
        return None
    return _subset(p.solutions(), local_map(p).enumerate_nash())


def prop_optimal_in_nash_global(p: Scsp):
    return _subset(_optimal(p), global_map(p).enumerate_nash())


def prop_optimal_eq_pareto_global(p: Scsp):
    return _equal(_optimal(p), global_map(p).enumerate_pareto())


def prop_inverse_optimal_eq_pareto(x):
    g = _as_game(x)
    return _equal(_optimal(game_to_scsp(g)), g.enumerate_pareto())


def prop_merged_optimal_eq_pareto_nash(x):
    g = _as_game(x)
    merged = merge(game_to_scsp(g), harden(g))
    if _optimum_is_zero(merged):
        return None
    return _equal(_optimal(merged), g.enumerate_pareto_nash())


PROPERTIES: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "a.optimal_in_nash_local": (prop_optimal_in_nash_local, ("weighted",)),
    "a.optimal_in_pareto_local": (prop_optimal_in_pareto_local, ("weighted",)),
    "a.optimal_in_pareto_local_uniform_arity": (
        prop_optimal_in_pareto_local_uniform_arity, ("weighted",)),
    "b.solutions_in_nash_local": (prop_solutions_in_nash_local, ("classical",)),
    "c.optimal_in_nash_global": (prop_optimal_in_nash_global, SCSP_FAMILIES),
    "c.optimal_eq_pareto_global": (prop_optimal_eq_pareto_global, SCSP_FAMILIES),
    "d.inverse_optimal_eq_pareto": (prop_inverse_optimal_eq_pareto, FAMILIES),
    "e.merged_optimal_eq_pareto_nash": (prop_merged_optimal_eq_pareto_nash, FAMILIES),
}


def _observe(p: Scsp) -> dict[str, bool]:
    """Strictness witnesses: the inclusions that need not hold."""
    opt = set(_optimal(p))
    game = local_map(p)
    nash = set(game.enumerate_nash())
    return {
        "optimal_not_nash_local": bool(opt - nash),
        "nash_local_not_optimal": bool(nash - opt),
        "pareto_local_not_optimal": bool(set(game.enumerate_pareto()) - opt),
    }


# --- reports -----------------------------------------------------------------


@dataclass
class Failure:
    property: str
    index: int
    seed: int
    instance: str
    left: list[str]
    right: list[str]
    witness: str
    shrunk: str | None = None

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "index": self.index,
            "seed": self.seed,
            "witness": self.witness,
            "left": self.left,
            "right": self.right,
            "instance": json.loads(self.instance),
        }
        if self.shrunk is not None:
            out["shrunk"] = json.loads(self.shrunk)
        return out


@dataclass
class VerificationReport:
    config: GeneratorConfig
    count: int
    sweep_shapes: bool
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    observations: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "generator": GENERATOR_ID,
            "config": self.config.to_json(),
            "count": self.count,
            "sweep_shapes": self.sweep_shapes,
            "properties": self.counts,
            "observations": self.observations,
            "failures": [f.to_json() for f in self.failures],
        }

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            f"generator: {GENERATOR_ID}",
            f"family: {cfg.family}  seed: {cfg.seed}  count: {self.count}  "
            f"num_vars: {cfg.num_vars}  domain_size: {cfg.domain_size}  density: {cfg.density}"
            + ("  (shape sweep)" if self.sweep_shapes else ""),
        ]
        for name, c in self.counts.items():
            verdict = "PASS" if c["failed"] == 0 else "FAIL"
            lines.append(
                f"{verdict} {name}: passed={c['passed']} failed={c['failed']} skipped={c['skipped']}"
            )
        for name, n in self.observations.items():
            lines.append(f"observed {name}: {n}")
        for f in self.failures:
            lines.append(
                f"violation {f.property} at instance {f.index} (seed {f.seed}): witness {f.witness}"
            )
        return "\n".join(lines) + "\n"


def _render(problem, assignments) -> list[str]:
    return [io.format_assignment(s) for s in assignments]


def _shrink(prop: Callable, problem):
    """Greedily drop constraints of a failing SCSP while the failure persists."""
    if not isinstance(problem, Scsp):
        return None
    current = problem
    changed = True
    while changed:
        changed = False
        for k in range(len(current.constraints)):
            kept = current.constraints[:k] + current.constraints[k + 1:]
            candidate = Scsp(current.semiring, current.variables, kept)
            outcome = prop(candidate)
            if outcome is not None and not outcome.ok:
                current = candidate
                changed = True
                break
    return current if current is not problem else None


def _instance_config(cfg: GeneratorConfig, index: int, sweep: bool) -> GeneratorConfig:
    seed = (int(cfg.seed) + index) % 2**64
    if not sweep:
        return replace(cfg, seed=seed)
    nv = cfg.num_vars - 1
    nd = cfg.domain_size - 1
    return replace(cfg, seed=seed, num_vars=2 + index % nv, domain_size=2 + (index // nv) % nd)


def _run_instance(args) -> tuple[list[tuple[str, str]], dict[str, bool], list[Failure]]:
    cfg, index, sweep = args
    icfg = _instance_config(cfg, index, sweep)
    problem = generate(icfg)
    statuses = []
    failures = []
    for name, (prop, families) in PROPERTIES.items():
        if cfg.family not in families:
            continue
        outcome = prop(problem)
        if outcome is None:
            statuses.append((name, "skipped"))
            continue
        statuses.append((name, "passed" if outcome.ok else "failed"))
        if not outcome.ok:
            shrunk = _shrink(prop, problem)
            failures.append(Failure(
                property=name,
                index=index,
                seed=int(icfg.seed),
                instance=io.dumps(problem),
                left=_render(problem, outcome.left),
                right=_render(problem, outcome.right),
                witness=io.format_assignment(outcome.witness),
                shrunk=io.dumps(shrunk) if shrunk is not None else None,
            ))
    observed = _observe(problem) if isinstance(problem, Scsp) else {}
    return statuses, observed, failures


def verify_all(cfg: GeneratorConfig, count: int, *, sweep_shapes: bool = False,
               workers: int = 1) -> VerificationReport:
    """Generate ``count`` instances and check every property that applies.

    With ``sweep_shapes`` instance ``k`` cycles through sizes
    ``2..cfg.num_vars`` x ``2..cfg.domain_size`` instead of using the
    configured size. Output does not depend on ``workers``.
    """
    if not isinstance(count, int) or count < 1:
        raise InvalidConfig("count must be a positive integer")
    if sweep_shapes and (cfg.num_vars < 2 or cfg.domain_size < 2):
        raise InvalidConfig("shape sweep needs num_vars >= 2 and domain_size >= 2")
    jobs = [(cfg, k, sweep_shapes) for k in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_instance, jobs, chunksize=max(1, count // (4 * workers))))
    else:
        results = [_run_instance(j) for j in jobs]

    report = VerificationReport(cfg, count, sweep_shapes)
    for name, (_, families) in PROPERTIES.items():
        if cfg.family in families:
            report.counts[name] = {"passed": 0, "failed": 0, "skipped": 0}
    if cfg.family in SCSP_FAMILIES:
        report.observations = {k: 0 for k in ("optimal_not_nash_local", "nash_local_not_optimal",
                                              "pareto_local_not_optimal")}
    for statuses, observed, failures in results:
        for name, status in statuses:
            report.counts[name][status] += 1
        for k, flag in observed.items():
            report.observations[k] += int(flag)
        report.failures.extend(failures)
    return report


def recheck(failure: Failure) -> bool:
    """Re-run a reported failure from its serialized instance alone."""
    prop, _ = PROPERTIES[failure.property]
    outcome = prop(io.loads(failure.instance))
    return outcome is not None and not outcome.ok
