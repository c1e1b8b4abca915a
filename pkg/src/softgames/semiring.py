"""c-semirings over exact values, their induced order, and validators.

Values are plain Python objects:

* classical: ``bool``
* fuzzy: rational in [0, 1] (``int`` or ``Fraction``)
* weighted: non-negative rational, or the singleton :data:`INF`
* product: ``tuple`` with one component value per component semiring

Nothing here touches floats; equality is structural equality of rationals.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import KindMismatch, NotLinearlyOrdered, ParseError


@functools.total_ordering
class _Infinity:
    """The weighted semiring's zero. Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("softgames.INF")

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def _is_rational(v: Any) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def as_fraction(v: Any) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def format_rational(q: Rational) -> str:
    """Shortest exact text: ``3``, ``0.4``, or ``1/3`` when no finite decimal exists."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    scaled = q * 10**digits
    text = str(Decimal(scaled.numerator).scaleb(-digits))
    return text


_RATIONAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"expected a rational, got {text!r}")
    if isinstance(text, (int, Fraction, Decimal)):
        return Fraction(text)
    if isinstance(text, float):
        raise ParseError(f"binary float {text!r} is not exact; quote it as a string")
    if not isinstance(text, str):
        raise ParseError(f"expected a rational, got {text!r}")
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ParseError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


class Semiring:
    """Base c-semiring ``<A, +, x, 0, 1>``.

    Subclasses implement ``_plus``/``_times``/``contains``. The public
    ``plus``/``times``/``leq`` validate membership first.
    """

    kind: str = "abstract"
    linear: bool = True
    is_semiring: bool = True
    zero: Any = None
    one: Any = None

    def contains(self, v: Any) -> bool:
        raise NotImplementedError

    def _plus(self, a, b):
        raise NotImplementedError

    def _times(self, a, b):
        raise NotImplementedError

    def check(self, v: Any) -> Any:
        if not self.contains(v):
            raise KindMismatch(f"{v!r} is not in the {self.kind} carrier")
        return v

    def plus(self, a, b):
        return self._plus(self.check(a), self.check(b))

    def times(self, a, b):
        return self._times(self.check(a), self.check(b))

    def leq(self, a, b) -> bool:
        return self.plus(a, b) == b

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def combine(self, values: Iterable) -> Any:
        """x-fold of already-validated values; the empty fold is ``one``."""
        acc = self.one
        for v in values:
            acc = self._times(acc, v)
        return acc

    def sort_key(self, v):
        """Key that sorts ascending in the induced order (linear carriers only)."""
        raise NotLinearlyOrdered(f"{self.kind} carrier has no total order")

    def canonical_sample(self) -> list:
        raise NotImplementedError

    def format_value(self, v) -> str:
        raise NotImplementedError

    def parse_value(self, raw) -> Any:
        raise NotImplementedError

    def to_json(self) -> Any:
        return self.kind

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self).__name__)


class Classical(Semiring):
    kind = "classical"
    zero = False
    one = True

    def contains(self, v):
        return isinstance(v, bool)

    def _plus(self, a, b):
        return a or b

    def _times(self, a, b):
        return a and b

    def sort_key(self, v):
        return int(v)

    def canonical_sample(self):
        return [False, True]

    def format_value(self, v):
        return "true" if v else "false"

    def parse_value(self, raw):
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in ("true", "1"):
            return True
        if text in ("false", "0"):
            return False
        raise ParseError(f"not a classical value: {raw!r}")


class Fuzzy(Semiring):
    kind = "fuzzy"
    zero = Fraction(0)
    one = Fraction(1)

    def contains(self, v):
        return _is_rational(v) and 0 <= v <= 1

    def _plus(self, a, b):
        return max(a, b)

    def _times(self, a, b):
        return min(a, b)

    def sort_key(self, v):
        return v

    def canonical_sample(self):
        return [Fraction(k, 4) for k in range(5)]

    def format_value(self, v):
        return format_rational(v)

    def parse_value(self, raw):
        q = parse_rational(raw)
        if not 0 <= q <= 1:
            raise ParseError(f"fuzzy value {raw!r} outside [0, 1]")
        return q


class Weighted(Semiring):
    kind = "weighted"
    zero = INF
    one = Fraction(0)

    def contains(self, v):
        return v is INF or (_is_rational(v) and v >= 0)

    def _plus(self, a, b):
        return min(a, b)

    def _times(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def sort_key(self, v):
        # lower cost is better
        return (0, 0) if v is INF else (1, -v)

    def canonical_sample(self):
        return [Fraction(0), Fraction(1), Fraction(2), Fraction(5), INF]

    def format_value(self, v):
        return "inf" if v is INF else format_rational(v)

    def parse_value(self, raw):
        if isinstance(raw, str) and raw.strip().lower() in ("inf", "infinity"):
            return INF
        q = parse_rational(raw)
        if q < 0:
            raise ParseError(f"negative cost {raw!r}")
        return q


class Product(Semiring):
    """Cartesian product of linearly ordered base semirings (flat)."""

    kind = "product"

    def __init__(self, components: Sequence[Semiring]):
        components = tuple(components)
        if not components:
            raise KindMismatch("product needs at least one component")
        for c in components:
            if not isinstance(c, Semiring) or isinstance(c, Product) or not c.linear:
                raise KindMismatch(f"product components must be linear base semirings, got {c!r}")
        self.components = components
        self.zero = tuple(c.zero for c in components)
        self.one = tuple(c.one for c in components)
        self.linear = len(components) == 1

    def __repr__(self):
        return f"Product({list(self.components)!r})"

    def __eq__(self, other):
        return isinstance(other, Product) and self.components == other.components

    def __hash__(self):
        return hash(("product", self.components))

    def contains(self, v):
        return (
            isinstance(v, tuple)
            and len(v) == len(self.components)
            and all(c.contains(x) for c, x in zip(self.components, v))
        )

    def _plus(self, a, b):
        return tuple(c._plus(x, y) for c, x, y in zip(self.components, a, b))

    def _times(self, a, b):
        return tuple(c._times(x, y) for c, x, y in zip(self.components, a, b))

    def leq(self, a, b):
        self.check(a)
        self.check(b)
        return all(c.leq(x, y) for c, x, y in zip(self.components, a, b))

    def sort_key(self, v):
        if self.linear:
            return self.components[0].sort_key(v[0])
        return super().sort_key(v)

    def canonical_sample(self):
        return list(itertools.product(*(c.canonical_sample() for c in self.components)))

    def format_value(self, v):
        return "[" + ", ".join(c.format_value(x) for c, x in zip(self.components, v)) + "]"

    def parse_value(self, raw):
        if isinstance(raw, str):
            text = raw.strip()
            if not (text.startswith("[") and text.endswith("]")):
                raise ParseError(f"product value must look like [a, b, ...]: {raw!r}")
            parts = [p.strip() for p in text[1:-1].split(",")] if text[1:-1].strip() else []
        elif isinstance(raw, (list, tuple)):
            parts = list(raw)
        else:
            raise ParseError(f"not a product value: {raw!r}")
        if len(parts) != len(self.components):
            raise ParseError(f"expected {len(self.components)} components, got {raw!r}")
        return tuple(c.parse_value(p) for c, p in zip(self.components, parts))

    def to_json(self):
        return {"product": [c.kind for c in self.components]}


class UtilityScale(Semiring):
    """Exact rationals ordered by <=, higher is better.

    A payoff scale for games whose payoffs are plain utilities (e.g. the
    Prisoner's Dilemma). Linearly ordered but *not* a c-semiring: it has no
    absorbing top, so it may appear as a game carrier but never under an SCSP.
    """

    kind = "utility"
    is_semiring = False

    def contains(self, v):
        return _is_rational(v)

    def _plus(self, a, b):
        return max(a, b)

    def _times(self, a, b):
        raise KindMismatch("the utility scale has no combination operator")

    def combine(self, values):
        raise KindMismatch("the utility scale has no combination operator")

    def sort_key(self, v):
        return v

    def canonical_sample(self):
        return [Fraction(k) for k in (-1, 0, 1, 3, 4)]

    def format_value(self, v):
        return format_rational(v)

    def parse_value(self, raw):
        return parse_rational(raw)


CLASSICAL = Classical()
FUZZY = Fuzzy()
WEIGHTED = Weighted()
UTILITY = UtilityScale()

_BASE = {s.kind: s for s in (CLASSICAL, FUZZY, WEIGHTED, UTILITY)}


def semiring_from_json(obj: Any, *, allow_utility: bool = False) -> Semiring:
    """Decode ``"fuzzy"`` or ``{"product": [...]}`` (``obj`` may be the whole
    ``{"kind": ...}`` wrapper)."""
    if isinstance(obj, dict) and "kind" in obj:
        obj = obj["kind"]
    if isinstance(obj, str):
        s = _BASE.get(obj)
        if s is None or (s is UTILITY and not allow_utility):
            raise ParseError(f"unknown semiring kind {obj!r}")
        return s
    if isinstance(obj, dict) and set(obj) == {"product"} and isinstance(obj["product"], list):
        comps = []
        for k in obj["product"]:
            c = _BASE.get(k) if isinstance(k, str) else None
            if c is None or c is UTILITY:
                raise ParseError(f"bad product component {k!r}")
            comps.append(c)
        if not comps:
            raise ParseError("empty product")
        return Product(comps)
    raise ParseError(f"unknown semiring descriptor {obj!r}")


def rank_matrix(carrier: Semiring, values: Sequence) -> np.ndarray:
    """Dense int64 ranks of ``values``, higher = better in the induced order.

    One column for a linear carrier, one per component for a product. Ranks
    are exact: they come from sorting the carrier's own order keys.
    """
    if isinstance(carrier, Product):
        cols = [
            _dense_ranks(comp, [v[j] for v in values])
            for j, comp in enumerate(carrier.components)
        ]
        if not cols[0].size:
            return np.zeros((0, len(cols)), dtype=np.int64)
        return np.stack(cols, axis=1)
    return _dense_ranks(carrier, values)[:, None]


def _dense_ranks(carrier: Semiring, values: Sequence) -> np.ndarray:
    keys = [carrier.sort_key(v) for v in values]
    index = {k: r for r, k in enumerate(sorted(set(keys)))}
    return np.fromiter((index[k] for k in keys), dtype=np.int64, count=len(keys))


# --- validators --------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple


def check_axioms(s: Semiring, sample: Sequence | None = None) -> list[AxiomViolation]:
    """Evaluate every c-semiring axiom over all pairs/triples of ``sample``.

    Returns one violation (the first witness found) per failing axiom; an
    empty list means the sample is consistent with a c-semiring.
    """
    sample = list(s.canonical_sample() if not sample else sample)
    for v in sample:
        s.check(v)
    zero, one = s.zero, s.one
    found: dict[str, tuple] = {}

    def fail(name, *witness):
        found.setdefault(name, witness)

    for a in sample:
        if s.plus(a, a) != a:
            fail("plus_idempotent", a)
        if s.plus(a, zero) != a:
            fail("plus_unit", a)
        if s.plus(a, one) != one:
            fail("plus_absorbing", a)
        if s.times(a, one) != a:
            fail("times_unit", a)
        if s.times(a, zero) != zero:
            fail("times_absorbing", a)
    for a, b in itertools.product(sample, repeat=2):
        if s.plus(a, b) != s.plus(b, a):
            fail("plus_commutative", a, b)
        if s.times(a, b) != s.times(b, a):
            fail("times_commutative", a, b)
    for a, b, c in itertools.product(sample, repeat=3):
        if s.plus(s.plus(a, b), c) != s.plus(a, s.plus(b, c)):
            fail("plus_associative", a, b, c)
        if s.times(s.times(a, b), c) != s.times(a, s.times(b, c)):
            fail("times_associative", a, b, c)
        if s.times(a, s.plus(b, c)) != s.plus(s.times(a, b), s.times(a, c)):
            fail("times_distributive", a, b, c)
    return [AxiomViolation(name, w) for name, w in found.items()]


@dataclass(frozen=True)
class MonotonicityVerdict:
    strict: bool
    counterexample: tuple | None = None  # (a, b, c) with a < b but c*a == c*b

    def __bool__(self):
        return self.strict


def is_strictly_monotonic(s: Semiring, sample: Sequence | None = None) -> MonotonicityVerdict:
    """Search ``sample`` for ``a < b`` with ``c x a`` not strictly below ``c x b``.

    Witnesses where ``c`` differs from both ``a`` and ``b`` are preferred. For
    the weighted semiring ``c`` ranges over finite costs only: ``INF`` absorbs
    every sum, and strictness there is a property of the non-negative reals.
    """
    if not s.is_semiring:
        raise KindMismatch(f"{s.kind} is not a c-semiring")
    if not s.linear:
        raise NotLinearlyOrdered(f"{s!r} is only partially ordered")
    sample = list(s.canonical_sample() if not sample else sample)
    for v in sample:
        s.check(v)
    multipliers = [c for c in sample if not (s.kind == "weighted" and c is INF)]
    fallback = None
    for a, b in itertools.product(sample, repeat=2):
        if not s.lt(a, b):
            continue
        for c in multipliers:
            if not s.lt(s.times(c, a), s.times(c, b)):
                if c != a and c != b:
                    return MonotonicityVerdict(False, (a, b, c))
                if fallback is None:
                    fallback = (a, b, c)
    if fallback is not None:
        return MonotonicityVerdict(False, fallback)
    return MonotonicityVerdict(True)
