"""Soft constraint satisfaction problems over a c-semiring.

A joint assignment is a tuple of domain labels in variable order; anywhere
one is accepted, a ``{name: label}`` mapping works too. All enumeration
outputs are in canonical order: lexicographic by variable order, then by
domain order (the order ``itertools.product`` walks the domains in).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Mapping, Sequence

from . import _kernels
from .errors import InvalidProblem, KindMismatch, NotClassical, UnknownVariable
from .semiring import Semiring, rank_matrix


@dataclass(frozen=True)
class Variable:
    name: str
    domain: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        if not self.domain:
            raise InvalidProblem(f"variable {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise InvalidProblem(f"variable {self.name!r} has repeated domain values")


@dataclass(frozen=True, eq=False)
class SoftConstraint:
    """``table`` maps every tuple over the scope's domains to a carrier value."""

    scope: tuple[str, ...]
    table: Mapping[tuple[str, ...], Any]

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "table", {tuple(k): v for k, v in self.table.items()})
        if len(set(self.scope)) != len(self.scope):
            raise InvalidProblem(f"duplicate variable in scope {self.scope}")

    def __eq__(self, other):
        return (
            isinstance(other, SoftConstraint)
            and self.scope == other.scope
            and self.table == other.table
        )

    def __repr__(self):
        return f"SoftConstraint(scope={self.scope!r}, {len(self.table)} entries)"


def project(s: Mapping[str, str], scope: Sequence[str]) -> tuple[str, ...]:
    """Values of ``s`` on ``scope``, in scope order."""
    try:
        return tuple(s[name] for name in scope)
    except KeyError as exc:
        raise UnknownVariable(f"{exc.args[0]!r} is not assigned") from None


@dataclass(frozen=True, eq=False)
class Scsp:
    semiring: Semiring
    variables: tuple[Variable, ...]
    constraints: tuple[SoftConstraint, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.semiring.is_semiring:
            raise KindMismatch(f"an SCSP needs a c-semiring, not {self.semiring.kind}")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise InvalidProblem("variable names must be unique")
        domains = {v.name: v.domain for v in self.variables}
        for c in self.constraints:
            for name in c.scope:
                if name not in domains:
                    raise UnknownVariable(f"constraint scope mentions unknown variable {name!r}")
            expected = set(itertools.product(*(domains[n] for n in c.scope)))
            if set(c.table) != expected:
                missing = sorted(expected - set(c.table))
                extra = sorted(set(c.table) - expected)
                raise InvalidProblem(
                    f"table over {c.scope} is not total (missing {missing[:3]}, extra {extra[:3]})"
                )
            for v in c.table.values():
                self.semiring.check(v)

    def __eq__(self, other):
        return (
            isinstance(other, Scsp)
            and self.semiring == other.semiring
            and self.variables == other.variables
            and self.constraints == other.constraints
        )

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @cached_property
    def domains(self) -> dict[str, tuple[str, ...]]:
        return {v.name: v.domain for v in self.variables}

    @cached_property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(v.domain) for v in self.variables)

    @cached_property
    def _positions(self) -> list[tuple[int, ...]]:
        index = {n: i for i, n in enumerate(self.names)}
        return [tuple(index[n] for n in c.scope) for c in self.constraints]

    def as_tuple(self, s: Mapping[str, str] | Sequence[str]) -> tuple[str, ...]:
        if isinstance(s, Mapping):
            missing = [n for n in self.names if n not in s]
            if missing:
                raise UnknownVariable(f"assignment misses {missing}")
            s = tuple(s[n] for n in self.names)
        s = tuple(s)
        if len(s) != len(self.variables):
            raise InvalidProblem(f"assignment {s} has the wrong length")
        for v, x in zip(self.variables, s):
            if x not in v.domain:
                raise InvalidProblem(f"{x!r} is not in the domain of {v.name!r}")
        return s

    def as_dict(self, s: Sequence[str]) -> dict[str, str]:
        return dict(zip(self.names, s))

    def project(self, s, scope: Sequence[str]) -> tuple[str, ...]:
        if not isinstance(s, Mapping):
            s = self.as_dict(s)
        return project(s, scope)

    def assignments(self) -> Iterator[tuple[str, ...]]:
        return itertools.product(*(v.domain for v in self.variables))

    def preference(self, s) -> Any:
        s = self.as_tuple(s)
        return self._preference(s)

    def _preference(self, s: tuple[str, ...]) -> Any:
        return self.semiring.combine(
            c.table[tuple(s[p] for p in pos)]
            for c, pos in zip(self.constraints, self._positions)
        )

    @cached_property
    def all_preferences(self) -> list:
        """Preference of every joint assignment, in canonical order."""
        return [self._preference(s) for s in self.assignments()]

    def enumerate_optimal(self) -> list[tuple[tuple[str, ...], Any]]:
        """Solutions whose preference no other solution strictly exceeds."""
        prefs = self.all_preferences
        mask = _kernels.maximal_mask(rank_matrix(self.semiring, prefs))
        return [
            (s, prefs[k]) for k, s in enumerate(self.assignments()) if mask[k]
        ]

    def is_consistent(self) -> bool:
        if self.semiring.kind != "classical":
            raise NotClassical(f"consistency is defined for classical CSPs, not {self.semiring.kind}")
        return any(self.all_preferences)

    def solutions(self) -> list[tuple[str, ...]]:
        """Assignments with preference equal to the semiring's one."""
        one = self.semiring.one
        return [s for s, p in zip(self.assignments(), self.all_preferences) if p == one]


def make_scsp(semiring: Semiring, domains: Mapping[str, Sequence[str]] | Sequence[tuple[str, Sequence[str]]],
              constraints: Sequence[tuple[Sequence[str], Mapping]] = ()) -> Scsp:
    """Shorthand builder: ``domains`` as name -> labels, constraints as (scope, table).

    Table keys may be tuples or strings of single-character labels (``"ab"``).
    """
    items = domains.items() if isinstance(domains, Mapping) else domains
    variables = [Variable(n, tuple(d)) for n, d in items]
    built = []
    for scope, table in constraints:
        scope = tuple(scope)
        built.append(SoftConstraint(scope, {tuple(k): v for k, v in table.items()}))
    return Scsp(semiring, variables, built)
