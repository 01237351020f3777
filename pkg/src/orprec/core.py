"""Shared data model for optimal recombination problems.

An optimal recombination problem (ORP) takes an instance of an NP
optimization problem together with two feasible parent solutions and asks
for the best feasible solution that copies every gene from one of the
parents.  Genes on which the parents agree are therefore fixed; only the
positions in the difference set are free.

All objective arithmetic uses :class:`fractions.Fraction` so that penalty
constructions with strict inequality margins stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

MAX = "max"
MIN = "min"

LE = "le"
GE = "ge"
EQ = "eq"


class OrpError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(OrpError, ValueError):
    """Vectors or matrices have incompatible sizes."""


class InfeasibleParentError(OrpError, ValueError):
    """A parent solution is not feasible for its instance."""


class GuardExceededError(OrpError, RuntimeError):
    """An exponential routine was asked to handle an instance above its size guard."""


class WrongSolverError(OrpError, ValueError):
    """The instance lies outside the class a specialised solver handles."""


class FormatError(OrpError, ValueError):
    """A text instance file could not be parsed."""


def as_rational(value: Any) -> Fraction:
    """Convert an int, decimal string, Fraction or float to an exact Fraction.

    Floats are routed through ``repr`` so that ``0.1`` becomes ``1/10``
    rather than its binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if hasattr(value, "item"):  # numpy scalar
        return as_rational(value.item())
    return Fraction(str(value).strip())


def format_rational(value: Fraction | int) -> str:
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_bits(x: Iterable[Any]) -> tuple[int, ...]:
    bits = tuple(int(b) for b in x)
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"binary vector entries must be 0 or 1, got {b}")
    return bits


def _check_lengths(*vectors: Sequence[Any]) -> None:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise DimensionError(f"vector lengths differ: {sorted(lengths)}")


def difference_set(p1: Sequence[int], p2: Sequence[int]) -> frozenset[int]:
    """Return the (0-based) positions where the two parents differ."""
    _check_lengths(p1, p2)
    return frozenset(j for j, (a, b) in enumerate(zip(p1, p2)) if a != b)


def validate_gene_transmission(
    x: Sequence[int], p1: Sequence[int], p2: Sequence[int]
) -> bool:
    """True iff every gene of ``x`` equals the same gene in one of the parents."""
    _check_lengths(x, p1, p2)
    return all(v == a or v == b for v, a, b in zip(x, p1, p2))


@dataclass(frozen=True)
class ObjectiveValue:
    value: Fraction
    sense: str

    def __post_init__(self) -> None:
        if self.sense not in (MAX, MIN):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        object.__setattr__(self, "value", as_rational(self.value))

    def better_than(self, other: "ObjectiveValue") -> bool:
        """Strict improvement of ``self`` over ``other`` under the shared sense."""
        if other.sense != self.sense:
            raise ValueError("objective values with different senses are not comparable")
        if self.sense == MAX:
            return self.value > other.value
        return self.value < other.value

    def at_least_as_good(self, other: "ObjectiveValue") -> bool:
        return not other.better_than(self)


def better(a: Fraction, b: Fraction, sense: str) -> bool:
    """Strict improvement of value ``a`` over ``b``."""
    return a > b if sense == MAX else a < b


@dataclass(frozen=True)
class Row:
    """One linear constraint ``coeffs . x  <relation>  rhs``."""

    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def lhs(self, x: Sequence[int]) -> Fraction:
        return sum((a for a, v in zip(self.coeffs, x) if v and a), Fraction(0))

    def holds(self, x: Sequence[int]) -> bool:
        return _relation_holds(self.lhs(x), self.relation, self.rhs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for j, a in enumerate(self.coeffs) if a != 0)


def _relation_holds(lhs: Fraction, relation: str, rhs: Fraction) -> bool:
    if relation == LE:
        return lhs <= rhs
    if relation == GE:
        return lhs >= rhs
    return lhs == rhs


@dataclass(frozen=True)
class BlpInstance:
    """Boolean linear program ``opt { c x : rows, x in {0,1}^n }``.

    Rows whose coefficients are all zero are dropped at construction when the
    relation holds trivially and rejected otherwise, so every kept row has a
    nonempty support set.
    """

    c: tuple[Fraction, ...]
    rows: tuple[Row, ...] = ()
    sense: str = MAX

    def __post_init__(self) -> None:
        c = tuple(as_rational(v) for v in self.c)
        if not c:
            raise ValueError("a Boolean linear program needs at least one variable")
        if self.sense not in (MAX, MIN):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        rows = []
        for i, row in enumerate(self.rows):
            if not isinstance(row, Row):
                coeffs, relation, rhs = row
                row = Row(tuple(as_rational(a) for a in coeffs), relation, as_rational(rhs))
            if row.relation not in (LE, GE, EQ):
                raise ValueError(f"row {i + 1}: unknown relation {row.relation!r}")
            if len(row.coeffs) != len(c):
                raise DimensionError(f"row {i + 1} has {len(row.coeffs)} coefficients, expected {len(c)}")
            if not row.support:
                if not _relation_holds(Fraction(0), row.relation, row.rhs):
                    raise ValueError(f"row {i + 1} has no variables and can never hold")
                continue
            rows.append(row)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def support_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(row.support for row in self.rows)

    @property
    def n_max(self) -> int:
        return max((len(s) for s in self.support_sets), default=0)

    def objective(self, x: Sequence[int]) -> Fraction:
        return sum((cj for cj, v in zip(self.c, x) if v), Fraction(0))

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            raise DimensionError(f"expected {self.n} variables, got {len(x)}")
        return all(row.holds(x) for row in self.rows)

    def encode(self, x: Sequence[int]) -> tuple[int, ...]:
        return as_bits(x)


def evaluate_blp(instance: BlpInstance, x: Sequence[int]) -> tuple[bool, ObjectiveValue]:
    """Feasibility of ``x`` and its objective value ``c . x`` (computed either way)."""
    x = as_bits(x)
    feasible = instance.is_feasible(x)
    return feasible, ObjectiveValue(instance.objective(x), instance.sense)


def normalize_rows(instance: BlpInstance) -> tuple[tuple[tuple[Fraction, ...], Fraction], ...]:
    """Rewrite every row as ``a . x <= b``.

    ``>=`` rows are negated and each ``=`` row becomes a pair of opposite
    ``<=`` rows.
    """
    out = []
    for row in instance.rows:
        if row.relation in (LE, EQ):
            out.append((row.coeffs, row.rhs))
        if row.relation in (GE, EQ):
            out.append((tuple(-a for a in row.coeffs), -row.rhs))
    return tuple(out)


@dataclass(frozen=True)
class OrpInstance:
    """A problem instance plus two feasible parents.

    ``instance`` must provide ``is_feasible(solution)`` and
    ``encode(solution)``, the latter returning the binary encoding on which
    the difference set is defined.
    """

    instance: Any
    p1: Any
    p2: Any
    D: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        for name, parent in (("p1", self.p1), ("p2", self.p2)):
            if not self.instance.is_feasible(parent):
                raise InfeasibleParentError(f"parent {name} is infeasible")
        D = difference_set(self.instance.encode(self.p1), self.instance.encode(self.p2))
        object.__setattr__(self, "D", D)

    @property
    def d(self) -> int:
        return len(self.D)


def require_feasible_parents(instance: Any, p1: Any, p2: Any) -> None:
    for name, parent in (("p1", p1), ("p2", p2)):
        if not instance.is_feasible(parent):
            raise InfeasibleParentError(f"parent {name} is infeasible")
